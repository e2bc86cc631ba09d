import json

import pandas as pd
import pytest
from loguru import logger

from config.settings import DEFAULTS, Settings
from core.errors import UsageError
from core.fracpair import FracpairModel
from meadow_app import MeadowWorkbench
from utils import configure_logging


class TestSettings:
    def test_defaults(self):
        settings = Settings()
        assert settings.as_dict() == DEFAULTS
        assert settings["seed"] == 20140101

    def test_yaml_and_json_files(self, tmp_path):
        yaml_file = tmp_path / "settings.yml"
        yaml_file.write_text("search_budget: 10\nbot_probability: 0\n")
        settings = Settings(yaml_file)
        assert settings["search_budget"] == 10
        assert settings["bot_probability"] == 0.0

        json_file = tmp_path / "settings.json"
        json_file.write_text(json.dumps({"grid_bound": 3}))
        assert Settings(json_file)["grid_bound"] == 3

    @pytest.mark.parametrize(
        "content",
        ["colour: blue\n", "seed: abc\n", "bot_probability: 1.5\n", "random_cases: -1\n", "- 1\n- 2\n"],
    )
    def test_rejected_files(self, tmp_path, content):
        path = tmp_path / "settings.yaml"
        path.write_text(content)
        with pytest.raises(UsageError):
            Settings(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError, match="not found"):
            Settings(tmp_path / "absent.yaml")

    def test_override(self):
        settings = Settings()
        changed = settings.override(random_cases=50, seed=None)
        assert changed["random_cases"] == 50
        assert changed["seed"] == settings["seed"]
        assert settings["random_cases"] == DEFAULTS["random_cases"]


class TestWorkbench:
    def test_errors_become_results(self):
        workbench = MeadowWorkbench()
        result = workbench.evaluate("x^-1", "qbot", ["x=0", "y=1/0"])
        assert result == {"success": False, "error": result["error"], "kind": "usage"}
        assert workbench.log_entries[-1]["Step"] == "Evaluate"

    def test_domain_errors_are_tagged(self):
        workbench = MeadowWorkbench(settings=Settings().override(fracpair_cap_bits=4))
        result = workbench.fracpair("mul", ["1/4", "1/4"])
        assert result["kind"] == "domain"

    def test_fracpair_model_uses_settings(self):
        workbench = MeadowWorkbench(settings=Settings().override(fracpair_cap_bits=20))
        model = workbench.model("fracpair")
        assert isinstance(model, FracpairModel)
        assert model.cap_bits == 20

    def test_strategy_from_settings(self):
        workbench = MeadowWorkbench(settings=Settings().override(random_cases=12, seed=4))
        strategy = workbench.strategy("random")
        assert (strategy.cases, strategy.seed) == (12, 4)
        assert workbench.strategy("random:3", seed=9).seed == 9

    def test_export_excel(self, tmp_path):
        workbench = MeadowWorkbench()
        assert not workbench.export_reports(str(tmp_path / "empty.csv"))["success"]
        workbench.check("laws", "fp:3", "exhaustive")
        target = tmp_path / "laws.xlsx"
        result = workbench.export_reports(str(target), "excel")
        assert result["success"]
        assert result["rows"] == 5
        frame = pd.read_excel(target)
        assert list(frame["outcome"]) == ["pass", "pass", "pass", "pass", "fail"]

    def test_unsupported_export(self, tmp_path):
        workbench = MeadowWorkbench()
        workbench.check("c0", "fp:2", "exhaustive")
        assert not workbench.export_reports(str(tmp_path / "out.txt"), "parquet")["success"]


class TestLogging:
    def test_file_sink(self, tmp_path):
        target = tmp_path / "nested" / "run.log"
        configure_logging("INFO", target)
        logger.info("fracpair sweep finished")
        logger.debug("not at this level")
        configure_logging("WARNING")
        text = target.read_text()
        assert "INFO - " in text
        assert "fracpair sweep finished" in text
        assert "not at this level" not in text

    def test_log_file_is_a_setting(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("log_file: meadow.log\n")
        assert Settings(path)["log_file"] == "meadow.log"
        assert Settings()["log_file"] == ""
