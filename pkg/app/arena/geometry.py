"""
Grid geometry: 8-way headings, line of sight and shortest-path navigation.

Headings are numbered clockwise from north with y growing downwards, so
turning right adds to the heading and turning left subtracts.
"""

import math
from collections import deque
from functools import lru_cache

from .config import Cell, Layout

DIRECTIONS: tuple[Cell, ...] = (
    (0, -1),  # N
    (1, -1),  # NE
    (1, 0),  # E
    (1, 1),  # SE
    (0, 1),  # S
    (-1, 1),  # SW
    (-1, 0),  # W
    (-1, -1),  # NW
)
N_DIRECTIONS = len(DIRECTIONS)


def offset(cell: Cell, heading: int) -> Cell:
    dx, dy = DIRECTIONS[heading % N_DIRECTIONS]
    return cell[0] + dx, cell[1] + dy


def turn(heading: int, steps: int) -> int:
    """Rotate by `steps` x 45 degrees (positive = clockwise / right)."""
    return (heading + steps) % N_DIRECTIONS


def distance(a: Cell, b: Cell) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def heading_towards(origin: Cell, target: Cell) -> int:
    """Nearest of the 8 headings pointing from origin to target."""
    dx, dy = target[0] - origin[0], target[1] - origin[1]
    if dx == 0 and dy == 0:
        return 0
    angle = math.atan2(dx, -dy)  # 0 = north, clockwise positive
    return round(angle / (math.pi / 4)) % N_DIRECTIONS


def in_front(heading: int, origin: Cell, target: Cell) -> bool:
    """True when target lies in the closed half-plane the heading faces."""
    dx, dy = DIRECTIONS[heading % N_DIRECTIONS]
    return dx * (target[0] - origin[0]) + dy * (target[1] - origin[1]) >= 0


def line_cells(a: Cell, b: Cell) -> list[Cell]:
    """Bresenham line from a to b, both endpoints included."""
    x0, y0 = a
    x1, y1 = b
    dx, dy = abs(x1 - x0), -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    cells = []
    while True:
        cells.append((x0, y0))
        if x0 == x1 and y0 == y1:
            return cells
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def has_line_of_sight(walls: frozenset[Cell], a: Cell, b: Cell) -> bool:
    return not any(cell in walls for cell in line_cells(a, b)[1:-1])


class NavGrid:
    """
    Breadth-first distance fields over floor cells, cached per goal.

    Moves are 8-connected; a diagonal step needs both orthogonal neighbours
    open so paths never cut wall corners. Other entities are ignored here and
    only block at movement time.
    """

    def __init__(self, layout: Layout):
        self.layout = layout
        self._field = lru_cache(maxsize=512)(self._build_field)

    def can_step(self, cell: Cell, heading: int) -> bool:
        nxt = offset(cell, heading)
        if not self.layout.is_floor(nxt):
            return False
        dx, dy = DIRECTIONS[heading % N_DIRECTIONS]
        if dx and dy:
            return self.layout.is_floor((cell[0] + dx, cell[1])) and self.layout.is_floor(
                (cell[0], cell[1] + dy)
            )
        return True

    def neighbours(self, cell: Cell) -> list[Cell]:
        return [offset(cell, h) for h in range(N_DIRECTIONS) if self.can_step(cell, h)]

    def _build_field(self, goal: Cell) -> dict[Cell, int]:
        field = {goal: 0}
        queue = deque([goal])
        while queue:
            cell = queue.popleft()
            for nxt in self.neighbours(cell):
                if nxt not in field:
                    field[nxt] = field[cell] + 1
                    queue.append(nxt)
        return field

    def path_distance(self, start: Cell, goal: Cell) -> int | None:
        return self._field(goal).get(start)

    def step_towards(self, start: Cell, goal: Cell) -> Cell | None:
        """Next cell on a shortest path, first heading in clockwise order; None if unreachable or arrived."""
        field = self._field(goal)
        here = field.get(start)
        if here is None or here == 0:
            return None
        for nxt in self.neighbours(start):
            if field.get(nxt) == here - 1:
                return nxt
        return None

    def path(self, start: Cell, goal: Cell, max_steps: int) -> list[Cell]:
        cells: list[Cell] = []
        here = start
        for _ in range(max_steps):
            nxt = self.step_towards(here, goal)
            if nxt is None:
                break
            cells.append(nxt)
            here = nxt
        return cells
