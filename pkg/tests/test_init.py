"""Tests for __init__.py module."""

import sys
from unittest.mock import patch

import pytest


@pytest.mark.unit
def test_init_imports_version():
    """Test that __init__ imports version successfully."""
    from lacunary_harmonic import __version__

    assert isinstance(__version__, str)
    assert len(__version__) > 0


@pytest.mark.unit
def test_init_public_api():
    """The package root exposes the library entry points."""
    from lacunary_harmonic import PrimeRange, make_residue, run_check, run_suite

    assert make_residue(7, 5, 1).value == 2
    assert run_check("lehmer3", p=5)[0].status.value == "pass"
    assert run_suite(PrimeRange(24, 28), [3], ["lehmer3"]).results == []


@pytest.mark.unit
def test_init_all_exports():
    """Test that __all__ contains expected exports."""
    import lacunary_harmonic

    for name in lacunary_harmonic.__all__:
        assert hasattr(lacunary_harmonic, name)
    assert "run_suite" in lacunary_harmonic.__all__
    assert "__version__" in lacunary_harmonic.__all__


@pytest.mark.unit
def test_version_import_fallback():
    """Test version import fallback when _version module is not available."""
    original_modules = {k: v for k, v in sys.modules.items() if k.startswith("lacunary_harmonic")}

    try:
        for module in [k for k in sys.modules if k.startswith("lacunary_harmonic")]:
            del sys.modules[module]

        # A None entry makes "from ._version import ..." raise ImportError
        with patch.dict("sys.modules", {"lacunary_harmonic._version": None}):
            import lacunary_harmonic

            assert lacunary_harmonic.__version__ == "0.0.0.dev0+unknown"
    finally:
        for module in [k for k in list(sys.modules) if k.startswith("lacunary_harmonic")]:
            del sys.modules[module]
        sys.modules.update(original_modules)
