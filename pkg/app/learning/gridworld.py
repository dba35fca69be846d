"""
Deterministic 5x5 gridworld used to check the learner against an exact oracle.

The goal sits in the bottom-right corner. Entering it pays +1 and ends the
episode; every other move pays 0. Moves off the grid leave the agent in
place. Value iteration on the known model gives the optimal action set per
state.
"""

import numpy as np

from ..utils.rng import GameRNG
from .sarsa import LearnerParams, SarsaLearner

# up, right, down, left
_MOVES: tuple[tuple[int, int], ...] = ((0, -1), (1, 0), (0, 1), (-1, 0))
ACTION_NAMES = ("up", "right", "down", "left")


class GridWorld:
    def __init__(self, size: int = 5, goal: tuple[int, int] | None = None):
        self.size = size
        self.goal = goal if goal is not None else (size - 1, size - 1)
        self.n_states = size * size
        self.n_actions = len(_MOVES)

    def index(self, x: int, y: int) -> int:
        return y * self.size + x

    def cell(self, s: int) -> tuple[int, int]:
        return s % self.size, s // self.size

    @property
    def goal_state(self) -> int:
        return self.index(*self.goal)

    def step(self, s: int, a: int) -> tuple[int, float, bool]:
        x, y = self.cell(s)
        dx, dy = _MOVES[a]
        nx, ny = x + dx, y + dy
        if not (0 <= nx < self.size and 0 <= ny < self.size):
            nx, ny = x, y
        s_next = self.index(nx, ny)
        if s_next == self.goal_state:
            return s_next, 1.0, True
        return s_next, 0.0, False


def value_iteration(
    world: GridWorld, gamma: float = 0.9, tol: float = 1e-12
) -> tuple[np.ndarray, dict[int, set[int]]]:
    """Optimal state values and, per non-goal state, the set of optimal actions."""
    values = np.zeros(world.n_states)
    while True:
        delta = 0.0
        for s in range(world.n_states):
            if s == world.goal_state:
                continue
            best = max(
                r + (0.0 if done else gamma * values[s2])
                for s2, r, done in (world.step(s, a) for a in range(world.n_actions))
            )
            delta = max(delta, abs(best - values[s]))
            values[s] = best
        if delta < tol:
            break

    optimal: dict[int, set[int]] = {}
    for s in range(world.n_states):
        if s == world.goal_state:
            continue
        q = []
        for a in range(world.n_actions):
            s2, r, done = world.step(s, a)
            q.append(r + (0.0 if done else gamma * values[s2]))
        top = max(q)
        optimal[s] = {a for a, v in enumerate(q) if v >= top - 1e-9}
    return values, optimal


def train_gridworld(
    world: GridWorld | None = None,
    steps: int = 50_000,
    alpha: float = 0.1,
    gamma: float = 0.9,
    lam: float = 0.0,
    epsilon_start: float = 0.3,
    epsilon_end: float = 0.01,
    seed: int = 7,
    max_episode_steps: int = 20,
) -> SarsaLearner:
    """
    Train Sarsa(lambda) with linearly annealed epsilon.

    Episodes use exploring starts: a uniform non-goal state and a uniform
    first action. An episode that has not reached the goal after
    `max_episode_steps` moves is abandoned and a new one starts.
    """
    world = world or GridWorld()
    rng = GameRNG(seed)
    learner = SarsaLearner(
        world.n_states,
        world.n_actions,
        LearnerParams(alpha=alpha, gamma=gamma, lam=lam, epsilon=epsilon_start),
        name="gridworld",
    )
    all_actions = range(world.n_actions)
    starts = [s for s in range(world.n_states) if s != world.goal_state]

    def start_episode() -> int:
        s0 = rng.choice(starts)
        learner.begin(s0, rng.randrange(world.n_actions))
        return s0

    s = start_episode()
    episode_steps = 0
    for t in range(steps):
        learner.set_epsilon(epsilon_start + (epsilon_end - epsilon_start) * t / max(1, steps - 1))
        _, a = learner.pending
        s_next, r, done = world.step(s, a)
        episode_steps += 1
        if done:
            learner.finalize_episode(r)
        else:
            learner.observe(r, s_next, learner.select_action(s_next, all_actions, rng))
            s = s_next
            if episode_steps < max_episode_steps:
                continue
            learner.abandon_episode()
        s = start_episode()
        episode_steps = 0
    return learner


def policy_matches_oracle(learner: SarsaLearner, world: GridWorld, gamma: float = 0.9) -> float:
    """Fraction of non-goal states whose greedy action is optimal."""
    _, optimal = value_iteration(world, gamma)
    policy = learner.greedy_policy()
    hits = sum(1 for s, best in optimal.items() if policy[s] in best)
    return hits / len(optimal)
