import math
from pathlib import Path
from typing import List, Optional, Tuple

import pgio
from modules.plane_graph import EmbeddingData
from modules.testkit import embed

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load(name: str) -> pgio.PgFile:
    return pgio.read(fixture_path(name))


def ring(n: int, weights: Optional[List[int]] = None) -> EmbeddingData:
    """Cycle of ``n`` corners, numbered clockwise, with a pendant terminal ``n + j`` on corner ``j``."""
    weights = weights or [1] * n
    coordinates = []
    for radius in (1.0, 2.0):
        for j in range(n):
            angle = -2 * math.pi * j / n
            coordinates.append((radius * math.cos(angle), radius * math.sin(angle)))
    edges = [(j, (j + 1) % n, weights[j]) for j in range(n)]
    edges += [(j, n + j, 1) for j in range(n)]
    return embed(2 * n, edges, coordinates)


def terminal_pairs(n: int, *corner_pairs: Tuple[int, int]) -> List[Tuple[int, int]]:
    return [(n + a, n + b) for a, b in corner_pairs]
