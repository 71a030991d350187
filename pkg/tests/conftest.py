import pytest

from ratgroup import Transducer


def two_state_machine():
    return Transducer.from_table(
        {
            "s0": {"0": ("", "s1"), "1": ("11", "s0")},
            "s1": {"0": ("0", "s0"), "1": ("10", "s0")},
        },
        "s0",
    )


def identity_machine():
    return Transducer.from_table({"q": {"0": ("0", "q"), "1": ("1", "q")}}, "q")


@pytest.fixture
def two_state():
    return two_state_machine()


@pytest.fixture
def ident():
    return identity_machine()


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
