"""Deterministic synchronous round engine for node programs exchanging per-edge messages.

Model: in round t every non-halted node's ``step`` sees exactly the messages
sent in round t-1 and may address at most one message per port.  A halted node
is frozen and emits nothing further.  Per-node randomness comes from a counter
stream keyed by (config seed, node id), so results never depend on the order
in which nodes are evaluated within a round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import SimpleNamespace

TAG_BITS = 3  # message kind tag; every serialized message starts with one


class BandwidthViolation(RuntimeError):
    """A message exceeded the per-edge bit budget while enforcement was on."""

    def __init__(self, node: int, round_no: int, bits: int, limit: int):
        self.node = node
        self.round_no = round_no
        self.bits = bits
        self.limit = limit
        super().__init__(
            f"node {node} sent a {bits}-bit message in round {round_no}"
            f" (limit {limit} bits)"
        )


class Broadcast:
    """Outbox wrapper: send the same message on every port."""

    __slots__ = ("message",)

    def __init__(self, message):
        self.message = message


_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class NodeRng:
    """Tiny splitmix64 stream; draw j is a pure function of (seed, node, j).

    Deliberately small (one 64-bit word of state) so that a quarter-million
    node simulation does not pay for a Mersenne Twister per node.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int, node: int):
        self._state = _mix64((seed & _MASK64) ^ _mix64((node + 1) * _GAMMA & _MASK64))

    def next64(self) -> int:
        self._state = s = (self._state + _GAMMA) & _MASK64
        return _mix64(s)

    def getrandbits(self, bits: int) -> int:
        return self.next64() >> (64 - bits)

    def random(self) -> float:
        return self.next64() * 2.0**-64

    def randrange(self, n: int) -> int:
        return self.next64() % n


def node_rng(seed: int, node: int) -> NodeRng:
    return NodeRng(seed, node)


def default_bandwidth_bits(n: int) -> int:
    """ceil(4 * log2(n)) in exact integer arithmetic, floored at 1 bit."""
    if n <= 1:
        return 1
    return max(1, (n**4 - 1).bit_length())


def id_field_bits(n: int) -> int:
    """Bits needed for a node id or degree value in an n-node graph."""
    return max(1, (n - 1).bit_length())


@dataclass
class SimConfig:
    seed: int
    max_rounds: int = 1_000_000
    bandwidth_bits: int | None = None  # None -> ceil(4*log2 n) at run time
    enforce_bandwidth: bool = False
    trace: object = None  # optional text stream for "round,node,state_tag,sent" lines

    def __post_init__(self):
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")
        if self.bandwidth_bits is not None and self.bandwidth_bits < 1:
            raise ValueError("bandwidth_bits must be at least 1")


@dataclass(eq=True)
class SimResult:
    final_states: list
    rounds_executed: int
    total_messages: int
    max_message_bits: int
    halted_all: bool


class NodeProgram:
    """Behavioral interface for node programs.

    init(node, degree, params, rng) -> (state, outbox, halted)
    step(state, round_no, inbox)    -> (state, outbox, halted)

    An outbox is None, a Broadcast, a dict {port: message}, or an iterable of
    (port, message) pairs.  ``message_bits`` must report the canonical
    serialized size (tag + fixed-width payload fields) of any message the
    program sends.
    """

    def message_bits(self, message) -> int:
        raise NotImplementedError

    def init(self, node: int, degree: int, params, rng: NodeRng):
        raise NotImplementedError

    def step(self, state, round_no: int, inbox):
        raise NotImplementedError

    def state_tag(self, state) -> str:
        return "?"


def run(g, program: NodeProgram, cfg: SimConfig) -> SimResult:
    """Execute the program on every node of g until all nodes halt or
    cfg.max_rounds is reached."""
    n = g.node_count
    limit = cfg.bandwidth_bits if cfg.bandwidth_bits is not None else default_bandwidth_bits(n)
    enforce = cfg.enforce_bandwidth
    params = SimpleNamespace(n=n, bandwidth_bits=limit, enforce_bandwidth=enforce)
    deliv = g.delivery_lists()
    bits_of = program.message_bits
    trace = cfg.trace

    states: list = [None] * n
    halted = bytearray(n)
    cur: list[list] = [[] for _ in range(n)]
    nxt: list[list] = [[] for _ in range(n)]
    cur_touched: list[int] = []
    nxt_touched: list[int] = []
    total_messages = 0
    max_bits = 0

    def emit(v: int, outbox, round_no: int) -> int:
        nonlocal total_messages, max_bits
        if type(outbox) is Broadcast:
            msg = outbox.message
            bits = bits_of(msg)
            if bits > max_bits:
                max_bits = bits
            if enforce and bits > limit:
                raise BandwidthViolation(v, round_no, bits, limit)
            row = deliv[v]
            for u, back in row:
                if not halted[u]:
                    box = nxt[u]
                    if not box:
                        nxt_touched.append(u)
                    box.append((back, msg))
            total_messages += len(row)
            return len(row)
        items = outbox.items() if isinstance(outbox, dict) else outbox
        sent = 0
        row = deliv[v]
        for port, msg in items:
            if msg is None:
                continue
            bits = bits_of(msg)
            if bits > max_bits:
                max_bits = bits
            if enforce and bits > limit:
                raise BandwidthViolation(v, round_no, bits, limit)
            u, back = row[port]
            if not halted[u]:
                box = nxt[u]
                if not box:
                    nxt_touched.append(u)
                box.append((back, msg))
            sent += 1
        total_messages += sent
        return sent

    alive: list[int] = []
    adjacency = g.adjacency
    for v in range(n):
        state, outbox, h = program.init(v, len(adjacency[v]), params, NodeRng(cfg.seed, v))
        states[v] = state
        sent = emit(v, outbox, 0) if outbox is not None else 0
        if h:
            halted[v] = 1
        else:
            alive.append(v)
        if trace is not None:
            trace.write(f"0,{v},{program.state_tag(state)},{sent}\n")

    rounds = 0
    step = program.step
    while alive and rounds < cfg.max_rounds:
        rounds += 1
        cur, nxt = nxt, cur
        cur_touched, nxt_touched = nxt_touched, cur_touched
        new_alive: list[int] = []
        for v in alive:
            state, outbox, h = step(states[v], rounds, cur[v])
            states[v] = state
            sent = emit(v, outbox, rounds) if outbox is not None else 0
            if h:
                halted[v] = 1
            else:
                new_alive.append(v)
            if trace is not None:
                trace.write(f"{rounds},{v},{program.state_tag(state)},{sent}\n")
        for u in cur_touched:
            cur[u] = []
        cur_touched.clear()
        alive = new_alive

    return SimResult(
        final_states=states,
        rounds_executed=rounds,
        total_messages=total_messages,
        max_message_bits=max_bits,
        halted_all=not alive,
    )
