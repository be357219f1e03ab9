import pytest

from elotune.cli import main

DESK_GAMES = 2100
DESK_SEED = 42
DESK_MCTS = 25
ORIENTATION_SEED = 7

SIMULATE_ARGS = ["simulate", "--games", str(DESK_GAMES), "--seed", str(DESK_SEED), "--mcts-iterations", str(DESK_MCTS)]

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def desk_matches(tmp_path_factory):
    """Path of the desk-scale match CSV, generated once through the CLI."""
    path = tmp_path_factory.mktemp("desk") / "matches.csv"
    assert main([*SIMULATE_ARGS, "--out", str(path)]) == 0
    return path


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
