import importlib.util

import pytest

from tailscope import _backend, _fallback

HAVE_CYTHON = importlib.util.find_spec("tailscope._kernels") is not None


@pytest.fixture(params=["python", "cython"])
def backend(request, monkeypatch):
    """Run the test once per kernel implementation."""
    if request.param == "cython":
        if not HAVE_CYTHON:
            pytest.skip("compiled kernels not built")
        from tailscope import _kernels as impl
    else:
        impl = _fallback
    monkeypatch.setattr(_backend, "z_profile", impl.z_profile)
    monkeypatch.setattr(_backend, "kendall_trend", impl.kendall_trend)
    return request.param


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
