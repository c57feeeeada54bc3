"""MIS node programs and orchestration.

Contains the two classic randomized baselines (priority competition and
marking), the scale-based shattering algorithm for bounded-arboricity graphs,
a deterministic per-forest Cole-Vishkin MIS, and the full pipeline that glues
them together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .graph import (
    Graph,
    GraphError,
    connected_components,
    degeneracy_orientation,
    forest_decomposition,
    induced_subgraph,
)
from .simulator import (
    TAG_BITS,
    Broadcast,
    NodeProgram,
    SimConfig,
    SimResult,
    id_field_bits,
    run,
)
from . import verify as _verify

# node statuses
ACTIVE = 0
IN_MIS = 1
ELIMINATED = 2
BAD = 3

_STATUS_NAMES = {ACTIVE: "active", IN_MIS: "in_mis", ELIMINATED: "eliminated", BAD: "bad"}

# message encoding shared by the programs below: bare tags are small negative
# ints (allocation-free), priorities are non-negative ints, degree reports and
# id announcements are short tuples.
_PING = -1
_JOIN = -2
_BAD_MSG = -3

_BCAST_PING = Broadcast(_PING)
_BCAST_JOIN = Broadcast(_JOIN)
_BCAST_BAD = Broadcast(_BAD_MSG)

_MAX_PRIORITY_BITS = 63


def _priority_bits(params) -> int:
    """Priority field width: 63 bits, shrunk to fit the enforced budget."""
    if params.enforce_bandwidth:
        return max(1, min(_MAX_PRIORITY_BITS, params.bandwidth_bits - TAG_BITS))
    return _MAX_PRIORITY_BITS


def _nonzero_bits(rng, width: int) -> int:
    # 0 is reserved for the deterministic non-competitive priority
    r = rng.getrandbits(width)
    while r == 0:
        r = rng.getrandbits(width)
    return r


# ---------------------------------------------------------------------------
# scale parameters

@dataclass(frozen=True)
class ScaleParams:
    """Parameters of the scale-based shattering algorithm.

    Faithful mode is const_scale == 1.  In scaled mode both the iteration
    count and the degree-threshold constant are multiplied by const_scale so
    the scale loop actually executes at desk-size inputs; the per-scale
    competitiveness cutoff is never scaled.
    """

    alpha: int
    max_degree: int
    p_const: float
    const_scale: float
    num_scales: int
    iters_per_scale: int

    def _ln2_delta(self) -> float:
        if self.max_degree < 2:
            return 0.0
        ln_d = math.log(self.max_degree)
        return ln_d * ln_d

    def compete_cutoff(self, scale: int) -> float:
        """Degree above which a node sets its priority to 0 at this scale."""
        if self.max_degree < 2:
            return 0.0
        return 8.0 * math.log(self.max_degree) * self.max_degree / 2.0 ** (scale + 1)

    def high_degree_cutoff(self, scale: int) -> float:
        return self.max_degree / 2.0**scale + self.alpha

    def bad_count_cutoff(self, scale: int) -> float:
        return self.max_degree / 2.0 ** (scale + 2)

    def lo_degree_cutoff(self) -> float:
        return 1176.0 * 16.0 * self.alpha**10 * self.const_scale * self._ln2_delta() + self.alpha


def compute_scale_params(
    alpha: int, delta: int, p_const: float = 1.0, const_scale: float = 1.0
) -> ScaleParams:
    """Evaluate the scale count, per-scale iteration count and cutoffs.

    The scale count is clamped at 0 when the log argument is <= 1 (always the
    case in faithful mode at desk-size degrees).  Degenerate graphs with
    max degree < 2 get no scales and a pinned iteration count of 1.
    """
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    if delta < 1:
        raise ValueError("delta must be at least 1")
    if p_const < 1:
        raise ValueError("p_const must be at least 1")
    if const_scale <= 0:
        raise ValueError("const_scale must be positive")
    if delta < 2:
        return ScaleParams(alpha, delta, p_const, const_scale, 0, 1)
    ln_d = math.log(delta)
    ln2_d = ln_d * ln_d
    arg = delta / (1176.0 * 16.0 * alpha**10 * const_scale * ln2_d)
    num_scales = int(math.floor(math.log2(arg))) if arg > 1.0 else 0
    iters = math.ceil(
        p_const * 8 * alpha**2 * (32 * alpha**6 + 1) * math.log(260 * alpha**4 * ln2_d) * const_scale
    )
    return ScaleParams(alpha, delta, p_const, const_scale, num_scales, max(1, iters))


def const_scale_for_theta(alpha: int, delta: int, num_scales: int) -> float:
    """const_scale that makes the scale count come out to exactly num_scales.

    Picks the value putting the log argument right at 2**num_scales (nudged a
    hair upward so floating-point floor cannot undershoot).
    """
    if delta < 2:
        raise ValueError("needs delta >= 2")
    if num_scales < 1:
        raise ValueError("num_scales must be at least 1")
    ln_d = math.log(delta)
    s = delta / (1176.0 * 16.0 * alpha**10 * ln_d * ln_d * 2.0**num_scales)
    s *= 1.0 - 1e-9
    got = compute_scale_params(alpha, delta, 1.0, s).num_scales
    if got != num_scales:
        raise ArithmeticError(f"scale-count tuning failed: wanted {num_scales}, got {got}")
    return s


def scaled_params(
    alpha: int, delta: int, num_scales: int = 3, iters_per_scale: int = 8
) -> ScaleParams:
    """Desk-scale parameter set: exactly num_scales scales and at least
    iters_per_scale iterations per scale (via a large p_const)."""
    s = const_scale_for_theta(alpha, delta, num_scales)
    ln_d = math.log(delta)
    coeff = 8 * alpha**2 * (32 * alpha**6 + 1) * math.log(260 * alpha**4 * ln_d * ln_d) * s
    p_const = max(1.0, iters_per_scale / coeff)
    params = compute_scale_params(alpha, delta, p_const, s)
    assert params.num_scales == num_scales
    return params


# ---------------------------------------------------------------------------
# algorithm state

@dataclass(frozen=True)
class AlgorithmState:
    """Outcome of the shattering phase: a status per node plus exit records.

    exit_scale/exit_iter say when a node left the active set (0 = never).
    Snapshots of any earlier observation point can be reconstructed from the
    records, which is what the invariant checks use.
    """

    node_count: int
    status: tuple
    exit_scale: tuple
    exit_iter: tuple
    join_degree: tuple
    join_competitive: tuple

    @property
    def mis_nodes(self) -> frozenset:
        return frozenset(v for v in range(self.node_count) if self.status[v] == IN_MIS)

    @property
    def bad_nodes(self) -> frozenset:
        return frozenset(v for v in range(self.node_count) if self.status[v] == BAD)

    @property
    def active_nodes(self) -> frozenset:
        return frozenset(v for v in range(self.node_count) if self.status[v] == ACTIVE)

    def active_degrees(self, g: Graph) -> dict:
        """Degree of every active node counted within the active set."""
        active = self.active_nodes
        return {v: sum(1 for u in g.adjacency[v] if u in active) for v in active}

    def marked_bad_at(self, scale: int) -> frozenset:
        return frozenset(
            v
            for v in range(self.node_count)
            if self.status[v] == BAD and self.exit_scale[v] == scale
        )

    def _rebuild(self, keep) -> "AlgorithmState":
        status = tuple(self.status[v] if keep(v) else ACTIVE for v in range(self.node_count))
        return AlgorithmState(
            self.node_count,
            status,
            self.exit_scale,
            self.exit_iter,
            self.join_degree,
            self.join_competitive,
        )

    def snapshot_end_of_scale(self, scale: int, *, after_marking: bool = True) -> "AlgorithmState":
        """State at the end of the given scale, before or after bad removal."""

        def keep(v):
            s = self.status[v]
            if s == ACTIVE:
                return True  # survivor status is itself ACTIVE
            es = self.exit_scale[v]
            if s == BAD:
                return es < scale or (es == scale and after_marking)
            return es <= scale

        return self._rebuild(keep)

    def at_iteration(self, scale: int, iteration: int) -> "AlgorithmState":
        """State right after the given iteration of the given scale completed."""

        def keep(v):
            s = self.status[v]
            if s == ACTIVE:
                return True
            es, ei = self.exit_scale[v], self.exit_iter[v]
            if s == BAD:
                return es < scale
            return es < scale or (es == scale and ei <= iteration)

        return self._rebuild(keep)


# ---------------------------------------------------------------------------
# node programs

class MetivierProgram(NodeProgram):
    """Each iteration (2 rounds): draw a fresh priority and broadcast it; join
    the MIS iff it strictly beats every active neighbor's priority; nodes that
    hear a join announcement halt as eliminated."""

    def __init__(self):
        self._prio_bits = _MAX_PRIORITY_BITS

    def message_bits(self, msg) -> int:
        return TAG_BITS if msg < 0 else TAG_BITS + self._prio_bits

    def init(self, node, degree, params, rng):
        self._prio_bits = _priority_bits(params)
        r = _nonzero_bits(rng, self._prio_bits)
        state = [ACTIVE, r, rng, Broadcast(r)]
        return state, state[3], False

    def step(self, state, round_no, inbox):
        if round_no & 1:  # priorities arrived: decide
            mx = -1
            for _port, m in inbox:
                if m > mx:
                    mx = m
            if state[1] > mx:
                state[0] = IN_MIS
                return state, _BCAST_JOIN, True
            return state, None, False
        if inbox:  # a neighbor joined
            state[0] = ELIMINATED
            return state, None, True
        r = _nonzero_bits(state[2], self._prio_bits)
        state[1] = r
        bc = state[3]
        bc.message = r
        return state, bc, False

    def state_tag(self, state) -> str:
        return _STATUS_NAMES[state[0]]


def metivier_program() -> MetivierProgram:
    return MetivierProgram()


class LubyProgram(NodeProgram):
    """Marking variant: mark with probability 1/(2 deg) (1 if isolated); a
    marked node joins unless a marked neighbor dominates it by (degree, id).

    Ids are learned in one setup round so tie-breaks never need more than the
    per-edge bit budget; each iteration afterwards costs 3 rounds (ping,
    mark exchange, join announcements).
    """

    def __init__(self):
        self._id_bits = 1

    def message_bits(self, msg) -> int:
        if isinstance(msg, int):
            return TAG_BITS
        return TAG_BITS + self._id_bits  # ("id", v) or ("mark", deg)

    def init(self, node, degree, params, rng):
        self._id_bits = id_field_bits(params.n)
        # state: [status, id, port->id map, deg, marked, rng]
        state = [ACTIVE, node, [0] * degree, 0, False, rng]
        return state, Broadcast(("id", node)), False

    def step(self, state, round_no, inbox):
        if round_no == 1:
            ids = state[2]
            for port, m in inbox:
                ids[port] = m[1]
            return state, _BCAST_PING, False
        phase = (round_no - 2) % 3
        if phase == 0:  # pings arrived: count active degree, maybe mark
            deg = len(inbox)
            state[3] = deg
            marked = state[5].random() < (1.0 if deg == 0 else 0.5 / deg)
            state[4] = marked
            if marked:
                return state, Broadcast(("mark", deg)), False
            return state, None, False
        if phase == 1:  # marks arrived: dominant marked nodes join
            if not state[4]:
                return state, None, False
            deg, me = state[3], state[1]
            ids = state[2]
            for port, m in inbox:
                d2 = m[1]
                if d2 > deg or (d2 == deg and ids[port] > me):
                    return state, None, False
            state[0] = IN_MIS
            return state, _BCAST_JOIN, True
        if inbox:  # join announcements
            state[0] = ELIMINATED
            return state, None, True
        return state, _BCAST_PING, False

    def state_tag(self, state) -> str:
        return _STATUS_NAMES[state[0]]


def luby_program() -> LubyProgram:
    return LubyProgram()


# shatter program phases (value = what the next inbox holds)
_PH_PINGS = 0
_PH_PRIOS = 1
_PH_JOINS = 2
_PH_END_PINGS = 3
_PH_DEGS = 4


class ShatterProgram(NodeProgram):
    """Scale-based shattering: per scale, iters_per_scale priority-competition
    iterations (3 rounds each: ping, priorities, join announcements) followed
    by a 2-round ending (degree reports, bad marking + broadcast).

    Every scale ends with each node knowing its neighbors' active degrees as
    of that moment, so the self-marking rule sees exactly what an offline
    checker recomputes.
    """

    def __init__(self, params: ScaleParams):
        self.params = params
        t = params.num_scales
        self._rho = [0.0] + [params.compete_cutoff(k) for k in range(1, t + 1)]
        self._high = [0.0] + [params.high_degree_cutoff(k) for k in range(1, t + 1)]
        self._bad = [0.0] + [params.bad_count_cutoff(k) for k in range(1, t + 1)]
        self._prio_bits = _MAX_PRIORITY_BITS
        self._deg_bits = 1

    def message_bits(self, msg) -> int:
        if isinstance(msg, int):
            return TAG_BITS if msg < 0 else TAG_BITS + self._prio_bits
        return TAG_BITS + self._deg_bits  # ("deg", d)

    def init(self, node, degree, params, rng):
        self._prio_bits = _priority_bits(params)
        self._deg_bits = id_field_bits(params.n)
        # state: [phase, k, j, deg_ib, r, status, exit_scale, exit_iter,
        #         join_deg, join_competitive, rng, prio_broadcast]
        state = [_PH_PINGS, 1, 1, 0, 0, ACTIVE, 0, 0, -1, False, rng, Broadcast(0)]
        if self.params.num_scales == 0:
            return state, None, True
        return state, _BCAST_PING, False

    def step(self, state, round_no, inbox):
        phase = state[0]
        if phase == _PH_PINGS or phase == _PH_END_PINGS:
            deg = 0
            for _port, m in inbox:
                if m == _PING:
                    deg += 1
            state[3] = deg
            if phase == _PH_PINGS:
                r = 0 if deg > self._rho[state[1]] else _nonzero_bits(state[10], self._prio_bits)
                state[4] = r
                state[0] = _PH_PRIOS
                bc = state[11]
                bc.message = r
                return state, bc, False
            state[0] = _PH_DEGS
            return state, Broadcast(("deg", deg)), False
        if phase == _PH_PRIOS:
            mx = -1
            for _port, m in inbox:
                if m > mx:
                    mx = m
            r = state[4]
            if r > mx:
                state[5] = IN_MIS
                state[6], state[7] = state[1], state[2]
                state[8], state[9] = state[3], r > 0
                return state, _BCAST_JOIN, True
            state[0] = _PH_JOINS
            return state, None, False
        if phase == _PH_JOINS:
            for _port, m in inbox:
                if m == _JOIN:
                    state[5] = ELIMINATED
                    state[6], state[7] = state[1], state[2]
                    return state, None, True
            state[2] += 1
            state[0] = _PH_PINGS if state[2] <= self.params.iters_per_scale else _PH_END_PINGS
            return state, _BCAST_PING, False
        # _PH_DEGS: neighbors' degree reports arrived; apply the marking rule
        k = state[1]
        high_cut = self._high[k]
        count = 0
        for _port, m in inbox:
            if m[1] > high_cut:
                count += 1
        if count > self._bad[k]:
            state[5] = BAD
            state[6] = k
            return state, _BCAST_BAD, True
        if k < self.params.num_scales:
            state[1] = k + 1
            state[2] = 1
            state[0] = _PH_PINGS
            return state, _BCAST_PING, False
        return state, None, True  # survivor: stays ACTIVE

    def state_tag(self, state) -> str:
        return f"{_STATUS_NAMES[state[5]]}:k{state[1]}"


# ---------------------------------------------------------------------------
# runners

@dataclass(frozen=True)
class BaselineRun:
    mis: frozenset
    rounds: int
    iterations: int
    sim: SimResult


def _extract_mis(final_states) -> frozenset:
    return frozenset(v for v, st in enumerate(final_states) if st[0] == IN_MIS)


def _baseline_cfg(seed, bandwidth_bits, enforce_bandwidth, max_rounds):
    return SimConfig(
        seed=seed,
        max_rounds=max_rounds,
        bandwidth_bits=bandwidth_bits,
        enforce_bandwidth=enforce_bandwidth,
    )


def run_metivier(
    g: Graph,
    seed: int,
    *,
    bandwidth_bits: int | None = None,
    enforce_bandwidth: bool = False,
    max_rounds: int = 1_000_000,
) -> BaselineRun:
    res = run(g, metivier_program(), _baseline_cfg(seed, bandwidth_bits, enforce_bandwidth, max_rounds))
    if not res.halted_all:
        raise RuntimeError(f"metivier did not terminate within {max_rounds} rounds")
    iterations = (res.rounds_executed + 1) // 2
    return BaselineRun(_extract_mis(res.final_states), res.rounds_executed, iterations, res)


def run_luby(
    g: Graph,
    seed: int,
    *,
    bandwidth_bits: int | None = None,
    enforce_bandwidth: bool = False,
    max_rounds: int = 1_000_000,
) -> BaselineRun:
    res = run(g, luby_program(), _baseline_cfg(seed, bandwidth_bits, enforce_bandwidth, max_rounds))
    if not res.halted_all:
        raise RuntimeError(f"luby did not terminate within {max_rounds} rounds")
    iterations = max(0, (res.rounds_executed - 1 + 2) // 3)
    return BaselineRun(_extract_mis(res.final_states), res.rounds_executed, iterations, res)


@dataclass(frozen=True)
class ShatterRun:
    state: AlgorithmState
    rounds: int
    sim: SimResult


def run_shattering(
    g: Graph,
    params: ScaleParams,
    seed: int,
    *,
    bandwidth_bits: int | None = None,
    enforce_bandwidth: bool = False,
) -> ShatterRun:
    """Run the shattering phase through the round engine and collect exit records."""
    program = ShatterProgram(params)
    schedule = params.num_scales * (3 * params.iters_per_scale + 2)
    cfg = SimConfig(
        seed=seed,
        max_rounds=max(1, schedule),
        bandwidth_bits=bandwidth_bits,
        enforce_bandwidth=enforce_bandwidth,
    )
    res = run(g, program, cfg)
    if not res.halted_all:
        raise RuntimeError("shattering program exceeded its own round schedule")
    states = res.final_states
    state = AlgorithmState(
        node_count=g.node_count,
        status=tuple(st[5] for st in states),
        exit_scale=tuple(st[6] for st in states),
        exit_iter=tuple(st[7] for st in states),
        join_degree=tuple(st[8] for st in states),
        join_competitive=tuple(st[9] for st in states),
    )
    return ShatterRun(state, res.rounds_executed, res)


def bounded_arb_independent_set(
    g: Graph,
    params: ScaleParams,
    seed: int,
    *,
    bandwidth_bits: int | None = None,
    enforce_bandwidth: bool = False,
) -> tuple[AlgorithmState, int]:
    r = run_shattering(
        g, params, seed, bandwidth_bits=bandwidth_bits, enforce_bandwidth=enforce_bandwidth
    )
    return r.state, r.rounds


def partition_hi_lo(g: Graph, state: AlgorithmState, params: ScaleParams):
    """Split the still-active set by the low-degree cutoff."""
    cutoff = params.lo_degree_cutoff()
    degrees = state.active_degrees(g)
    lo = frozenset(v for v, d in degrees.items() if d <= cutoff)
    return lo, frozenset(degrees) - lo


def bad_components(g: Graph, state: AlgorithmState) -> list:
    """Connected components of the bad set, largest first."""
    comps = connected_components(g, state.bad_nodes)
    comps.sort(key=lambda c: (-len(c), c[0]))
    return [(frozenset(c), len(c)) for c in comps]


# ---------------------------------------------------------------------------
# per-forest Cole-Vishkin MIS

class ForestMISResult(NamedTuple):
    mis: frozenset
    rounds: int
    coloring_steps: tuple
    cleanup_rounds: int


def log_star(x: float) -> int:
    """Iterated base-2 logarithm: applications of log2 until the value is <= 1."""
    count = 0
    while x > 1.0:
        x = math.log2(x)
        count += 1
    return count


def _cv_color(und, par, colors):
    """Cole-Vishkin bit reduction to 6 colors, then shift-down to 3.

    Returns the number of reduction steps (including the six-to-three phase).
    Colors end up in {0, 1, 2}, proper on the forest edges given by `par`.
    """
    for v in und:
        colors[v] = v
    steps = 0
    while any(colors[v] > 5 for v in und):
        fresh = []
        for v in und:
            c = colors[v]
            p = par[v]
            if p < 0:
                fresh.append(c & 1)
            else:
                x = c ^ colors[p]
                i = (x & -x).bit_length() - 1
                fresh.append((i << 1) | ((c >> i) & 1))
        for v, c in zip(und, fresh):
            colors[v] = c
        steps += 1
    children: dict = {v: [] for v in und}
    for v in und:
        p = par[v]
        if p >= 0:
            children[p].append(v)
    for target in (5, 4, 3):
        fresh = []
        for v in und:
            p = par[v]
            fresh.append(colors[p] if p >= 0 else (colors[v] + 1) % 3)
        for v, c in zip(und, fresh):
            colors[v] = c
        steps += 1
        for v in und:
            if colors[v] == target:
                forbidden = {colors[w] for w in children[v]}
                p = par[v]
                if p >= 0:
                    forbidden.add(colors[p])
                colors[v] = min(c for c in (0, 1, 2) if c not in forbidden)
        steps += 1
    return steps


def cole_vishkin_forest_mis(g: Graph, nodes, decomposition) -> ForestMISResult:
    """Deterministic MIS of the subgraph induced by `nodes`, one forest at a time.

    Each forest pass 3-colors the still-undecided nodes along its edges and
    sweeps the color classes; a sweeping candidate defers to any conflicting
    same-color candidate that is its parent along their shared edge, which
    keeps simultaneous joins independent across edges the current forest does
    not cover.  Deferrals leave a node undecided, so a final greedy cleanup
    (one extra round per pass, usually zero) guarantees maximality.
    """
    n = g.node_count
    adjacency = g.adjacency
    member = bytearray(n)
    node_list = sorted(set(nodes))
    for v in node_list:
        member[v] = 1
    fo = decomposition.forest_of_edge
    fps = decomposition.forest_parent
    for v in node_list:
        for u in adjacency[v]:
            if u > v and member[u] and (v, u) not in fo:
                raise GraphError(f"decomposition does not cover induced edge ({v}, {u})")

    status = bytearray(n)  # 0 undecided, 1 in MIS, 2 out
    colors = [0] * n
    mis: list[int] = []
    und = list(node_list)
    rounds = 0
    coloring_steps = []

    def apply_joiners(joiners):
        for v in joiners:
            status[v] = 1
        mis.extend(joiners)
        for v in joiners:
            for u in adjacency[v]:
                if member[u] and status[u] == 0:
                    status[u] = 2

    for i in range(decomposition.forest_count):
        und = [v for v in und if status[v] == 0]
        if not und:
            break
        fp = fps[i]
        par = {}
        for v in und:
            p = fp.get(v)
            par[v] = p if (p is not None and member[p] and status[p] == 0) else -1
        steps = _cv_color(und, par, colors)
        coloring_steps.append(steps)
        rounds += steps + 3
        for c in (0, 1, 2):
            joiners = []
            for v in und:
                if status[v] != 0 or colors[v] != c:
                    continue
                defer = False
                for u in adjacency[v]:
                    if member[u] and status[u] == 0 and colors[u] == c:
                        key = (v, u) if v < u else (u, v)
                        if fps[fo[key]].get(v) == u:
                            defer = True
                            break
                if not defer:
                    joiners.append(v)
            apply_joiners(joiners)

    cleanup = 0
    while True:
        cands = [v for v in und if status[v] == 0]
        if not cands:
            break
        cleanup += 1
        rounds += 1
        joiners = []
        for v in cands:
            defer = False
            for u in adjacency[v]:
                if member[u] and status[u] == 0:
                    key = (v, u) if v < u else (u, v)
                    if fps[fo[key]].get(v) == u:
                        defer = True
                        break
            if not defer:
                joiners.append(v)
        if not joiners:
            # the decomposition's orientation cycles among the candidates;
            # fall back to id order, which always makes progress
            joiners = [
                v
                for v in cands
                if all(u < v or not (member[u] and status[u] == 0) for u in adjacency[v])
            ]
        apply_joiners(joiners)
        und = [v for v in und if status[v] == 0]

    return ForestMISResult(frozenset(mis), rounds, tuple(coloring_steps), cleanup)


def _decomposition_charge(size: int) -> int:
    """Simulated-round cost charged for computing a forest decomposition."""
    return (size - 1).bit_length() if size > 1 else 0


def _bounded_degree_mis(g: Graph, nodes) -> tuple[frozenset, int]:
    """MIS of an induced subgraph via degeneracy orientation + forest sweeps."""
    if not nodes:
        return frozenset(), 0
    sub, ids = induced_subgraph(g, nodes)
    orientation = degeneracy_orientation(sub)
    dec = forest_decomposition(sub, orientation)
    res = cole_vishkin_forest_mis(sub, range(sub.node_count), dec)
    return frozenset(ids[v] for v in res.mis), _decomposition_charge(len(ids)) + res.rounds


# ---------------------------------------------------------------------------
# full pipeline

class PhaseRounds(NamedTuple):
    shatter: int
    lo: int
    hi: int
    bad: int


@dataclass(frozen=True)
class MISOutcome:
    mis: frozenset
    rounds: int
    phase_breakdown: PhaseRounds
    bad_nodes: frozenset
    max_bad_component: int
    scale_params: ScaleParams
    max_message_bits: int
    total_messages: int
    shatter_state: AlgorithmState


class MISVerificationError(RuntimeError):
    """The pipeline produced an invalid MIS; indicates an implementation bug."""


def arb_mis(
    g: Graph,
    alpha: int,
    p_const: float = 1.0,
    const_scale: float = 1.0,
    seed: int = 0,
    *,
    bandwidth_bits: int | None = None,
    enforce_bandwidth: bool = False,
) -> MISOutcome:
    """Full MIS pipeline: shattering, hi/lo finishing, bad-component finishing.

    The result is re-verified (independence + maximality) before returning;
    components of the bad set are processed in parallel, so that phase is
    charged the cost of its most expensive component.
    """
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    delta = max(1, g.max_degree())
    params = compute_scale_params(alpha, delta, p_const, const_scale)
    shatter = run_shattering(
        g, params, seed, bandwidth_bits=bandwidth_bits, enforce_bandwidth=enforce_bandwidth
    )
    state = shatter.state

    v_lo, v_hi = partition_hi_lo(g, state, params)
    i_lo, rounds_lo = _bounded_degree_mis(g, v_lo)
    blocked = set()
    for v in i_lo:
        blocked.update(g.adjacency[v])
    i_hi, rounds_hi = _bounded_degree_mis(g, v_hi - blocked)

    accumulated = set(state.mis_nodes) | i_lo | i_hi
    adjacent_to_mis = set()
    for v in accumulated:
        adjacent_to_mis.update(g.adjacency[v])
    bad_rest = [v for v in state.bad_nodes if v not in adjacent_to_mis]
    rounds_bad = 0
    for comp in connected_components(g, bad_rest):
        mis_c, r_c = _bounded_degree_mis(g, comp)
        accumulated |= mis_c
        rounds_bad = max(rounds_bad, r_c)

    mis = frozenset(accumulated)
    violations = _verify.verify_mis(g, mis)
    if violations:
        raise MISVerificationError(f"pipeline produced an invalid MIS: {violations[:3]}")

    all_bad_comps = connected_components(g, state.bad_nodes)
    max_bad = max((len(c) for c in all_bad_comps), default=0)
    breakdown = PhaseRounds(shatter.rounds, rounds_lo, rounds_hi, rounds_bad)
    return MISOutcome(
        mis=mis,
        rounds=sum(breakdown),
        phase_breakdown=breakdown,
        bad_nodes=state.bad_nodes,
        max_bad_component=max_bad,
        scale_params=params,
        max_message_bits=shatter.sim.max_message_bits,
        total_messages=shatter.sim.total_messages,
        shatter_state=state,
    )
