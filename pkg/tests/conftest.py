import pytest

from mackey_e2.groups import preset


SMALL_GROUPS = ("1", "Z/2", "Z/3", "S3")


@pytest.fixture(scope="session")
def trivial_group():
    return preset("1")


@pytest.fixture(scope="session")
def z2():
    return preset("Z/2")


@pytest.fixture(scope="session")
def z3():
    return preset("Z/3")


@pytest.fixture(scope="session")
def s3():
    return preset("S3")


@pytest.fixture(scope="session", params=SMALL_GROUPS)
def small_group(request):
    return preset(request.param)
