import pytest

from cu_lab import certify, mpoly


@pytest.fixture(scope="session")
def cert_parts():
    """Raw named certificate polynomials, for mutation harnesses."""
    root = certify.default_data_dir()
    parts = {}
    for name in certify.CERT_NAMES:
        parsed_name, poly = mpoly.parse_named(root.joinpath(f"{name}.poly").read_text())
        assert parsed_name == name
        parts[name] = poly
    return parts


@pytest.fixture(scope="session")
def certs():
    return certify.load_certificates()


@pytest.fixture(scope="session")
def verified_reports(certs):
    """The full verification suite, run once per session (eliminant is costly)."""
    return certify.verify_all(certs)
