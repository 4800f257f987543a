"""Shared fixtures: the four built-in scenarios, each run once per session."""

from collections import namedtuple

import pytest

from blochpath import (
    ScenarioConfig,
    build_scenario,
    efficiency_report,
    schrodinger_evolve,
)

ExampleRun = namedtuple("ExampleRun", "config field psi0 grid traj report")


def run_example(number: int, **kwargs) -> ExampleRun:
    config = ScenarioConfig(scenario=f"example{number}", **kwargs)
    field, psi0, grid = build_scenario(config)
    traj = schrodinger_evolve(field, psi0, grid)
    return ExampleRun(config, field, psi0, grid, traj, efficiency_report(traj))


@pytest.fixture(scope="session")
def example1():
    return run_example(1)


@pytest.fixture(scope="session")
def example2():
    return run_example(2)


@pytest.fixture(scope="session")
def example3():
    return run_example(3)


@pytest.fixture(scope="session")
def example4():
    return run_example(4)
