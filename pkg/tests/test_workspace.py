import pytest

from mackey_e2.config import WorkspaceConfig
from mackey_e2.constructions import representation_module
from mackey_e2.errors import InputError
from mackey_e2.formats import save_module
from mackey_e2.mackey import GradedMackeyModule
from mackey_e2.workspace import Workspace


@pytest.fixture
def workspace(s3, tmp_path):
    return Workspace(WorkspaceConfig("S3", output_dir=str(tmp_path)), group=s3)


@pytest.mark.parametrize(
    "text, size, orbits",
    [
        ("G/1", 6, 1),
        ("pt", 1, 1),
        ("0", 0, 0),
        ("G/G + G/1", 7, 2),
        ("G/H<1> * G/H<2>", 6, 1),
        ("G/H<1> * G/H<1>", 9, 2),
        ("(pt + G/H<2>) * G/H<1>", 9, 2),
        ("G/<1>", None, 1),
    ],
)
def test_gset_literals(workspace, text, size, orbits):
    X = workspace.gset(text)

    if size is not None:
        assert X.size == size
    assert len(X.orbits) == orbits


@pytest.mark.parametrize("text", ["", "G/H<9>", "G/1 +", "(pt", "pt)", "G/x", "G/<a>", "pt pt"])
def test_bad_gset_literals(workspace, text):
    with pytest.raises(InputError):
        workspace.gset(text)


def test_subgroups(workspace, s3):
    assert workspace.subgroup("1").elements == s3.trivial.elements
    assert workspace.subgroup("G").elements == s3.whole.elements
    assert workspace.subgroup("H<2>").order == 3
    with pytest.raises(InputError):
        workspace.subgroup("K")


def test_named_modules(workspace):
    R = workspace.module("R")

    assert R.even is representation_module(workspace.group)
    assert workspace.module("R") is R
    assert workspace.module("Bur").even.functor.kind == "burnside"
    assert workspace.module("0").is_zero()
    assert workspace.module("R[G/1]").even.level_invariants()[0] == (6, ())
    assert workspace.ungraded("R[pt]").level_invariants() == R.even.level_invariants()


def test_unknown_modules(workspace, tmp_path):
    with pytest.raises(InputError, match="Unknown module"):
        workspace.module("M")
    with pytest.raises(InputError, match="not found"):
        workspace.module(str(tmp_path / "missing.json"))


def test_module_files_and_registration(workspace, tmp_path):
    R = representation_module(workspace.group)
    path = str(tmp_path / "r.json")
    save_module(GradedMackeyModule.concentrated(R, 1), path)

    loaded = workspace.module(path)

    assert loaded.even.is_zero()
    assert workspace.modules[path] is loaded
    with pytest.raises(InputError, match="odd component"):
        workspace.ungraded(path)
    workspace.register("twice", R)
    assert workspace.ungraded("twice") is R


def test_output_path(workspace, tmp_path):
    assert workspace.output_path("x.json") == str(tmp_path / "x.json")
