import pytest

from afaset import build_system

# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)


def self_loop():
    return build_system(["a"], [("a", "a")], "a")


def two_cycle():
    return build_system(["a", "b"], [("a", "b"), ("b", "a")], "a")


def escher():
    return build_system(
        ["s0", "s1", "s2", "s3"],
        [("s0", "s3"), ("s1", "s0"), ("s2", "s1"), ("s3", "s2")],
        "s3",
    )


def citations():
    return build_system(["a1", "a2", "a3"], [("a3", "a2"), ("a2", "a1"), ("a1", "a3")], "a3")


def empty_picture():
    return build_system(["e"], [], "e")


def chain(a="a", b="b"):
    return build_system([a, b], [(a, b)], a)


def vn2_picture():
    return build_system(["n2", "n1", "n0"], [("n2", "n1"), ("n2", "n0"), ("n1", "n0")], "n2")


@pytest.fixture
def omega_pictures():
    return [self_loop(), two_cycle(), escher(), citations()]
