"""
Simple script to smoke-test the Common Meadow Toolkit
"""
import os
import sys
from pathlib import Path

# Add the project directory to the path so we can import our modules
sys.path.append(os.path.abspath(os.path.dirname(__file__)))

from meadow_app import MeadowWorkbench
from utils import configure_logging


def test_evaluation(workbench):
    print("\n=== Testing Evaluation ===")
    result = workbench.evaluate("x*x^-1", "qbot", ["x=0"])
    if result["success"] and result["text"] == "_|_":
        print("✓ x*x^-1 at x=0 is _|_")
        return True
    print(f"✗ Unexpected result: {result}")
    return False


def test_decision(workbench):
    print("\n=== Testing Decision Procedure ===")
    cases = [
        ("x*x^-1", "1 + 0*x^-1", True),
        ("x*x^-1", "1", False),
        ("(x*x - 1)/(x - 1)", "x + 1", False),
    ]
    ok = True
    for left, right, expected in cases:
        result = workbench.decide(left, right)
        if not result["success"] or result["equal"] != expected:
            print(f"✗ {left} = {right}: {result}")
            ok = False
        else:
            print(f"✓ {left} = {right}: {result['verdict'].headline}")
    return ok


def test_law_suite(workbench):
    print("\n=== Testing Law Suite ===")
    result = workbench.check("md_bot", "fp:5", "exhaustive")
    if not result["success"]:
        print(f"✗ Check failed to run: {result['error']}")
        return False
    passed = sum(record["outcome"] == "pass" for record in result["records"])
    print(f"✓ {passed}/{len(result['records'])} axioms pass on fp:5")

    output_path = Path("reports") / "md_bot_fp5.csv"
    output_path.parent.mkdir(exist_ok=True)
    export_result = workbench.export_reports(str(output_path), "csv")
    if export_result["success"]:
        print(f"✓ Reports exported to {output_path}")
    else:
        print(f"✗ Export failed: {export_result.get('error')}")
    return result["failed"] == 0 and export_result["success"]


def test_fracpairs(workbench):
    print("\n=== Testing Fracpairs ===")
    result = workbench.fracpair("add", ["1/2", "1/2"])
    if result["success"] and result["text"] == "2/2":
        print("✓ 1/2 + 1/2 = 2/2")
        return True
    print(f"✗ Unexpected result: {result}")
    return False


def main():
    configure_logging("WARNING")
    workbench = MeadowWorkbench()
    results = [
        test_evaluation(workbench),
        test_decision(workbench),
        test_law_suite(workbench),
        test_fracpairs(workbench),
    ]
    print(f"\n{sum(results)}/{len(results)} smoke tests passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
