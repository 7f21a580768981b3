import pytest

from mackey_e2.config import CACHE_ENV, DEFAULT_MAX_P, WorkspaceConfig
from mackey_e2.errors import InputError


def test_defaults(monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)

    config = WorkspaceConfig(" S3 ")

    assert config.group_spec == "S3"
    assert config.max_p == DEFAULT_MAX_P
    assert config.cache_dir is None
    assert config.choice_seed is None
    config.validate()


def test_choice_seed_follows_randomize():
    assert WorkspaceConfig("S3", seed=4, randomize_choices=True).choice_seed == 4
    assert WorkspaceConfig("S3", seed=4).choice_seed is None


def test_cache_dir_from_the_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))

    assert WorkspaceConfig("S3").cache_dir == str(tmp_path)
    assert WorkspaceConfig("S3", cache_dir="elsewhere").cache_dir == "elsewhere"


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"group_spec": ""}, "group spec is required"),
        ({"group_spec": None}, "group spec is required"),
        ({"group_spec": "S3", "max_order": 0}, "order cap"),
        ({"group_spec": "S3", "threads": 0}, "Thread count"),
        ({"group_spec": "S3", "max_p": -1}, "max-p"),
    ],
)
def test_validate_rejects(kwargs, message):
    with pytest.raises(InputError, match=message):
        WorkspaceConfig(**kwargs).validate()


def test_validate_rejects_files_as_directories(tmp_path):
    path = tmp_path / "file.txt"
    path.write_text("x", encoding="utf-8")

    with pytest.raises(InputError, match="Output path"):
        WorkspaceConfig("S3", output_dir=str(path)).validate()
    with pytest.raises(InputError, match="Cache path"):
        WorkspaceConfig("S3", cache_dir=str(path)).validate()
    WorkspaceConfig("S3", output_dir=str(tmp_path / "new"), cache_dir=str(tmp_path)).validate()
