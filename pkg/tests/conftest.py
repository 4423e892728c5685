import pytest

from inertia import fixtures, load_long_csv, load_wide_csv, merge_datasets
from inertia._kernels import available_backends, load_backend


@pytest.fixture(scope="session")
def pre_dataset():
    return load_wide_csv(str(fixtures.fixture_path(fixtures.PRE_WIDE)),
                         fixtures.PRE_BASIS)


@pytest.fixture(scope="session")
def post_dataset():
    return load_long_csv(str(fixtures.fixture_path(fixtures.POST_LONG)),
                         fixtures.POST_BASIS)


@pytest.fixture(scope="session")
def panel(pre_dataset, post_dataset):
    return merge_datasets(pre_dataset, post_dataset)


@pytest.fixture(params=available_backends())
def backend(request):
    return load_backend(request.param)
