from gradia.config import Settings


def test_load_env_creates_reports_dir(tmp_path, monkeypatch):
    target = tmp_path / "out" / "reports"
    monkeypatch.setenv("GRADIA_REPORTS_DIR", str(target))
    loaded = Settings.load_env()
    assert loaded.reports_dir == target
    assert target.is_dir()


def test_environment_overrides_defaults(tmp_path, monkeypatch):
    monkeypatch.setenv("GRADIA_DEFAULT_FUEL", "42")
    monkeypatch.setenv("GRADIA_REPORTS_DIR", str(tmp_path))
    assert Settings.load_env().default_fuel == 42
