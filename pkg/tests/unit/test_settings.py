"""
Unit tests for settings
"""

import pytest
import json

from src.models import GridSpec
from src.utils.settings import Settings, SETTINGS_ENV


@pytest.mark.unit
class TestSettings:
    """Test Settings"""

    def test_defaults_without_file(self, temp_dir):
        """Test defaults apply and no file is created"""
        path = temp_dir / "settings.json"
        s = Settings(path)

        assert s.get("grid.n_theta") == 6
        assert s.get("scan.max_workers") == 4
        assert s.get("tolerances.glems") == 1e-9
        assert not path.exists()

    def test_missing_key_default(self, temp_dir):
        """Test missing dotted keys return the default"""
        s = Settings(temp_dir / "settings.json")

        assert s.get("grid.n_zeta") is None
        assert s.get("grid.n_theta.deeper", "x") == "x"

    def test_save_and_load(self, temp_dir):
        """Test saved settings load back merged with defaults"""
        path = temp_dir / "nested" / "settings.json"
        s = Settings(path)
        s.set("grid.r_max", 6.0)
        s.set("output.directory", "results")
        s.save_settings()

        reloaded = Settings(path)
        assert reloaded.get("grid.r_max") == 6.0
        assert reloaded.get("grid.n_phi") == 8
        assert reloaded.get("output.directory") == "results"

    def test_partial_file_merges_with_defaults(self, temp_dir):
        """Test a partial section keeps the other defaults"""
        path = temp_dir / "settings.json"
        path.write_text(json.dumps({"scan": {"max_workers": 2}}))

        s = Settings(path)
        assert s.get("scan.max_workers") == 2
        assert s.get("scan.parallel_threshold") == 10

    def test_corrupt_file_falls_back(self, temp_dir):
        """Test a corrupt file falls back to defaults"""
        path = temp_dir / "settings.json"
        path.write_text("{not json")

        s = Settings(path)
        assert s.get("grid") == s.get_default_settings()["grid"]

    def test_environment_path(self, temp_dir, monkeypatch):
        """Test the settings location can come from the environment"""
        path = temp_dir / "from_env.json"
        path.write_text(json.dumps({"logging": {"level": "debug"}}))
        monkeypatch.setenv(SETTINGS_ENV, str(path))

        s = Settings()
        assert s.settings_file == path
        assert s.get("logging.level") == "debug"

    def test_grid_from_settings(self, mocker):
        """Test GridSpec defaults come from the grid section"""
        from src.utils.settings import settings

        mocker.patch.dict(settings._settings, {"grid": {"n_theta": 4, "r_max": 5.0}})
        grid = GridSpec.from_settings()

        assert grid.n_theta == 4
        assert grid.r_max == 5.0
        assert grid.n_phi == GridSpec().n_phi

    def test_tolerances_feed_symplectic_checks(self):
        """Test physicality, GLEMS and case tolerances come from settings"""
        from src.core import symplectic
        from src.utils.settings import settings

        assert symplectic.PHYSICAL_TOL == settings.get("tolerances.physical")
        assert symplectic.GLEMS_TOL == settings.get("tolerances.glems")
        assert symplectic.CASE_TOL == settings.get("tolerances.case")
