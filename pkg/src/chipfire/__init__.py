"""Parallel chip-firing games with motors.

Simulation with exact transient and period detection, the calculus of
periodic firing patterns, a mechanical check of the sector inequality,
game transformations and a census harness for structural checks.
"""
from ._kernel import BACKEND
from .engine import (
    BudgetExceededError,
    Game,
    MotorSchedule,
    SimulationResult,
    StateCorruptionError,
    parse_game,
    serialize_game,
    simulate,
    step,
)
from .graph import Graph, GraphError, generate, parse_graph, serialize_graph
from .patterns import activity, is_clumpy, max_clumps, sectors, signed_sum_M

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceededError",
    "Game",
    "Graph",
    "GraphError",
    "MotorSchedule",
    "SimulationResult",
    "StateCorruptionError",
    "activity",
    "generate",
    "is_clumpy",
    "max_clumps",
    "parse_game",
    "parse_graph",
    "sectors",
    "serialize_game",
    "serialize_graph",
    "signed_sum_M",
    "simulate",
    "step",
]
