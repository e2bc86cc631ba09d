import datetime
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import pandas as pd
from loguru import logger

from config.settings import Settings
from core.errors import MeadowError, UsageError
from core.fracpair import FracpairModel, fp_add, fp_inv, fp_mul, fp_neg, parse_fracpair, to_qbot
from core.normal import normalize_text, to_record, to_term
from core.terms import evaluate, parse, render
from core.values import Model, model_from_name
from reasoning.decide import equal_ccm0
from reasoning.lawcheck import Strategy, builtin_suites, run_suite

FRACPAIR_OPS = {"add": 2, "mul": 2, "neg": 1, "inv": 1, "canon": 1, "qbot": 1}


class MeadowWorkbench:
    """
    Orchestrates evaluation, normalization, decision, law checking and
    fracpair arithmetic, keeping an audit trail of every call.
    """

    def __init__(self, config_path: Optional[Union[str, Path]] = None, settings: Optional[Settings] = None):
        self.settings = settings or Settings(config_path)
        self.log_entries: List[Dict[str, Any]] = []
        self.reports: List[Dict[str, Any]] = []

    def create_log_entry(self, step: str, source: str, detail: str, message: str) -> Dict[str, Any]:
        """Create a standardized log entry."""
        entry = {
            "Step": step,
            "Timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "Source": source,
            "ActionDetail": detail,
            "Message": message,
        }
        self.log_entries.append(entry)
        return entry

    def _guarded(self, step: str, detail: str, fn: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
        try:
            result = fn()
        except MeadowError as e:
            self.create_log_entry(step, "MeadowWorkbench", detail, str(e))
            logger.debug("{} failed: {}", step, e)
            kind = "usage" if isinstance(e, UsageError) else "domain"
            return {"success": False, "error": str(e), "kind": kind}
        self.create_log_entry(step, "MeadowWorkbench", detail, "Success")
        result["success"] = True
        return result

    def model(self, name: str) -> Model:
        """
        Look up a model by name, applying the fracpair cap from settings.

        Args:
            name: qbot, qzero, fp:<p>, fp0:<p> or fracpair

        Returns:
            The model instance
        """
        model = model_from_name(name)
        if isinstance(model, FracpairModel):
            model.cap_bits = self.settings["fracpair_cap_bits"]
        return model

    @staticmethod
    def parse_bindings(model: Model, bindings: Sequence[str]) -> Dict[str, Any]:
        assignment = {}
        for binding in bindings:
            name, sep, text = binding.partition("=")
            if not sep or not name.strip():
                raise UsageError(f"Binding '{binding}' must look like var=value")
            assignment[name.strip()] = model.parse_value(text)
        return assignment

    def evaluate(self, expr: str, model_name: str = "qbot", bindings: Sequence[str] = ()) -> Dict[str, Any]:
        """
        Evaluate a term in a model.

        Args:
            expr: Term text, e.g. 'x*x^-1'
            model_name: Name of the model to evaluate in
            bindings: 'var=value' strings covering every variable of the term

        Returns:
            Dictionary with the value, its text form and the model name
        """
        def run():
            model = self.model(model_name)
            value = evaluate(parse(expr), self.parse_bindings(model, bindings), model)
            return {"value": value, "text": model.render_value(value), "model": model.name}

        return self._guarded("Evaluate", f"{expr} in {model_name}", run)

    def normalize(self, expr: str) -> Dict[str, Any]:
        """
        Bring a term to fraction normal form.

        Args:
            expr: Term text

        Returns:
            Dictionary with the form, its structured record and its term text
        """
        def run():
            form = normalize_text(expr)
            return {"form": form, "record": to_record(form), "text": render(to_term(form))}

        return self._guarded("Normalize", expr, run)

    def decide(self, left: str, right: str, budget: Optional[int] = None) -> Dict[str, Any]:
        """
        Decide an equation in common cancellation meadows of characteristic zero.

        Args:
            left: Left-hand term text
            right: Right-hand term text
            budget: Grid points for the counterexample search (settings default)

        Returns:
            Dictionary with the verdict, an equality flag and the verdict record
        """
        def run():
            verdict = equal_ccm0(
                parse(left),
                parse(right),
                budget if budget is not None else self.settings["search_budget"],
                grid_bound=self.settings["grid_bound"],
            )
            return {"verdict": verdict, "equal": verdict.equal, "record": verdict.to_record()}

        return self._guarded("Decide", f"{left} = {right}", run)

    def strategy(self, text: str, seed: Optional[int] = None, bound: Optional[int] = None) -> Strategy:
        """Build a strategy from text, filling sampling options from settings."""
        return Strategy.parse(
            text,
            seed if seed is not None else self.settings["seed"],
            cases=self.settings["random_cases"],
            bot_probability=self.settings["bot_probability"],
            sample_bound=bound if bound is not None else self.settings["sample_bound"],
            boundary_first=self.settings["boundary_first"],
        )

    def check(self, suite: str, model_name: str, strategy: str = "random", seed: Optional[int] = None) -> Dict[str, Any]:
        """
        Check a builtin law suite against a model. Records are kept for export.

        Args:
            suite: Suite name (md, md_bot, prop1, prop2, laws, prop4, c0)
            model_name: Name of the model to check
            strategy: 'exhaustive', 'random' or 'random:<n>'
            seed: Seed for random strategies (settings default)

        Returns:
            Dictionary with the reports, their records and the number of failures
        """
        def run():
            model = self.model(model_name)
            bound = self.settings["fracpair_bound"] if isinstance(model, FracpairModel) else None
            reports = run_suite(model, suite, self.strategy(strategy, seed, bound), self.settings["c0_nmax"])
            records = [report.to_record() for report in reports]
            self.reports.extend(records)
            failed = sum(not report.passed for report in reports)
            return {"reports": reports, "records": records, "failed": failed}

        return self._guarded("Check", f"{suite} on {model_name} ({strategy})", run)

    def fracpair(self, op: str, operands: Sequence[str]) -> Dict[str, Any]:
        """
        Apply a fracpair operation.

        Args:
            op: add, mul, neg, inv, canon or qbot
            operands: Operands as 'p/q' text

        Returns:
            Dictionary with the resulting value and its text form
        """
        def run():
            if op not in FRACPAIR_OPS:
                raise UsageError(f"Unknown fracpair operation '{op}'. Known operations: {', '.join(FRACPAIR_OPS)}")
            if len(operands) != FRACPAIR_OPS[op]:
                raise UsageError(f"fracpair {op} takes {FRACPAIR_OPS[op]} operand(s), got {len(operands)}")
            values = [parse_fracpair(text) for text in operands]
            cap = self.settings["fracpair_cap_bits"]
            if op == "add":
                value = fp_add(*values, cap_bits=cap)
            elif op == "mul":
                value = fp_mul(*values, cap_bits=cap)
            elif op == "neg":
                value = fp_neg(*values, cap_bits=cap)
            elif op == "inv":
                value = fp_inv(*values, cap_bits=cap)
            elif op == "qbot":
                value = to_qbot(*values)
            else:
                # parsing already canonicalizes
                value = values[0]
            return {"value": value, "text": str(value)}

        return self._guarded("Fracpair", f"{op} {' '.join(operands)}", run)

    def suites(self) -> Dict[str, List[Dict[str, str]]]:
        """
        List the builtin suites.

        Returns:
            Suite names mapped to their laws, each as {'law': name, 'text': law text}
        """
        listing = {}
        for name, entries in builtin_suites(self.settings["c0_nmax"]).items():
            listing[name] = [{"law": entry.name, "text": str(entry)} for entry in entries]
        self.create_log_entry("Suites", "MeadowWorkbench", "", "Success")
        return listing

    def export_reports(self, output_path: str, format: str = "csv") -> Dict[str, Any]:
        """
        Export collected check reports to csv or excel, with the audit log
        written next to them as JSON.

        Args:
            output_path: Path to save the reports
            format: Output format ('csv' or 'excel')

        Returns:
            Export status with the report and log paths
        """
        if not self.reports:
            return {"success": False, "error": "No reports to export"}
        df = pd.DataFrame(self.reports, columns=["law", "model", "strategy", "outcome", "witness", "cases", "note"])
        try:
            if format.lower() == "csv":
                df.to_csv(output_path, index=False)
            elif format.lower() == "excel":
                df.to_excel(output_path, index=False)
            else:
                return {"success": False, "error": f"Unsupported format: {format}"}
            log_path = output_path + ".log.json"
            with open(log_path, "w") as f:
                json.dump(self.log_entries, f, indent=2)
        except OSError as e:
            return {"success": False, "error": str(e)}
        return {"success": True, "path": output_path, "log_path": log_path, "rows": len(df)}
