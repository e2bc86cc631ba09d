"""
Setup script for the Common Meadow Toolkit.
This will install all required dependencies and create the reports directory.
"""
import subprocess
import sys
from pathlib import Path


def install_requirements():
    """Install required packages."""
    print("Installing required packages...")

    try:
        import pip  # noqa: F401
    except ImportError:
        print("ERROR: pip not found. Please install pip first.")
        sys.exit(1)

    required_packages = [
        "pandas>=1.5.0",
        "openpyxl>=3.1.0",
        "pyyaml>=6.0",
        "typer>=0.9.0",
        "rich>=13.0.0",
        "loguru>=0.7.0",
        "sympy>=1.12",
    ]

    # Only needed to run the test suite
    test_packages = [
        "pytest>=7.4",
        "hypothesis>=6.80",
    ]

    failed = []
    for package in required_packages:
        print(f"Installing {package.split('>=')[0]}...")
        try:
            subprocess.check_call([sys.executable, "-m", "pip", "install", package])
            print(f"✓ Successfully installed {package}")
        except subprocess.CalledProcessError:
            failed.append(package)
            print(f"✗ Failed to install {package}")
            print("Please install it manually with:")
            print(f"  pip install {package}")

    choice = input("\nInstall the test packages as well? (y/N): ")
    if choice.strip().lower() == "y":
        for package in test_packages:
            try:
                subprocess.check_call([sys.executable, "-m", "pip", "install", package])
                print(f"✓ Successfully installed {package}")
            except subprocess.CalledProcessError:
                failed.append(package)
                print(f"✗ Failed to install {package}")

    if failed:
        print(f"\n{len(failed)} package(s) failed to install: {', '.join(failed)}")
    else:
        print("\nAll required packages installed successfully!")


def create_directories():
    """Create the directory check reports are exported to."""
    reports = Path(__file__).parent / "reports"
    if not reports.exists():
        reports.mkdir(parents=True, exist_ok=True)
        print("✓ Created reports")
    else:
        print("✓ reports already exists")


def main():
    print("==== Common Meadow Toolkit Setup ====\n")

    install_requirements()
    create_directories()

    print("\n==== Setup Complete ====")
    print("\nTo smoke-test the toolkit, run:")
    print("  python test.py")
    print("\nOr check a law suite directly:")
    print("  python cli.py check md_bot --model fp:5 --strategy exhaustive --output reports/md_bot.csv")


if __name__ == "__main__":
    main()
