"""Process-wide knobs. The CLI writes these from its global flags."""

from dataclasses import dataclass


@dataclass
class Config:
    max_ground_size: int = 20
    # numeric-layer acceptance tolerance for reports and suites
    tolerance: float = 1e-8
    seed: int = 0
    binary_tree_cap: int = 4


config = Config()
