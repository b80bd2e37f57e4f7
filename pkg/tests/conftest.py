import pytest

from smalldiv import kernels


def available_impls():
    mods = [("pure", kernels.get_impl("pure"))]
    try:
        mods.append(("fast", kernels.get_impl("fast")))
    except ImportError:
        pass
    return mods


@pytest.fixture(params=[name for name, _ in available_impls()])
def impl(request):
    return kernels.get_impl(request.param)
