import pytest

from dchain import kernel, stdlib
from dchain.surface import parse_telescope, parse_term
from dchain.syntax import Context, Environment


@pytest.fixture(scope="session")
def env() -> Environment:
    return stdlib.load()


def elab(env: Environment, text: str, ctx: Context = Context()):
    """Parse and elaborate ``text`` in ``ctx``."""
    t = parse_term(text, ctx.names(), env.names())
    return kernel.elaborate(env, ctx, t)


def telescope(env: Environment, text: str) -> Context:
    ctx = parse_telescope(text, env.names())
    return stdlib.elaborate_context(env, ctx, kernel.DEFAULT_FUEL)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
