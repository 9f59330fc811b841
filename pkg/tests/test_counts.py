"""Trace counting: width, tallies, rotation layering, and trace errors."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftqc_estimator.counts import (
    LogicalCounts,
    TraceEvent,
    count_trace,
    counts_from_estimates,
    parse_trace_lines,
    read_trace,
)
from ftqc_estimator.errors import (
    ArityMismatchError,
    DoubleAllocError,
    InvalidCountsError,
    TraceFormatError,
    UseAfterReleaseError,
)


def ev(op, *qubits):
    return TraceEvent(op, tuple(qubits))


def rotation_depth_oracle(events):
    """Brute-force layer assignment over the counted (non-transparent) events."""
    last = {}
    rz_layers = set()
    for event in events:
        if event.op in ("alloc", "release", "clifford"):
            continue
        layer = 1 + max((last.get(q, 0) for q in event.qubits), default=0)
        for q in event.qubits:
            last[q] = layer
        if event.op == "rz":
            rz_layers.add(layer)
    return len(rz_layers)


class TestCountTrace:
    def test_empty_stream(self):
        assert count_trace([]) == LogicalCounts()

    def test_mixed_trace(self):
        trace = [
            ev("alloc", 0, 1, 2),
            ev("t", 0),
            ev("rz", 0),
            ev("rz", 1),
            ev("ccz", 0, 1, 2),
            ev("measure", 0),
            ev("release", 0, 1, 2),
        ]
        counts = count_trace(trace)
        assert counts.num_qubits == 3
        assert counts.t_count == 1
        assert counts.rotation_count == 2
        assert counts.ccz_count == 1
        assert counts.ccix_count == 0
        assert counts.measurement_count == 1
        # rz[0] depends on t[0] (layer 2) while rz[1] opens layer 1, so two
        # distinct layers carry a rotation; matches the brute-force oracle
        assert counts.rotation_depth == rotation_depth_oracle(trace) == 2

    def test_sequential_rotations_cannot_share_a_layer(self):
        counts = count_trace([ev("alloc", 0), ev("rz", 0), ev("rz", 0), ev("release", 0)])
        assert counts.rotation_count == 2
        assert counts.rotation_depth == 2

    def test_parallel_rotations_share_a_layer(self):
        counts = count_trace([ev("alloc", 0, 1), ev("rz", 0), ev("rz", 1)])
        assert counts.rotation_depth == 1

    def test_clifford_is_transparent_for_layering(self):
        with_clifford = [
            ev("alloc", 0, 1),
            ev("rz", 0),
            ev("clifford", 0, 1),
            ev("rz", 1),
        ]
        assert count_trace(with_clifford).rotation_depth == 1
        assert count_trace(with_clifford).rotation_count == 2

    def test_clifford_not_counted(self):
        counts = count_trace([ev("alloc", 0, 1), ev("clifford", 0), ev("clifford", 0, 1)])
        assert counts == LogicalCounts(num_qubits=2)

    def test_width_is_peak_concurrent_allocation(self):
        counts = count_trace(
            [
                ev("alloc", 0),
                ev("alloc", 1),
                ev("release", 0),
                ev("alloc", 2),
                ev("alloc", 3),
                ev("release", 1, 2, 3),
            ]
        )
        assert counts.num_qubits == 3

    def test_realloc_of_released_id_is_allowed(self):
        counts = count_trace(
            [ev("alloc", 0), ev("t", 0), ev("release", 0), ev("alloc", 0), ev("t", 0)]
        )
        assert counts.num_qubits == 1
        assert counts.t_count == 2

    def test_use_after_release(self):
        with pytest.raises(UseAfterReleaseError) as excinfo:
            count_trace([ev("alloc", 0), ev("release", 0), ev("t", 0)])
        assert excinfo.value.qubit_id == 0
        assert excinfo.value.event_index == 2

    def test_use_of_never_allocated(self):
        with pytest.raises(UseAfterReleaseError):
            count_trace([ev("t", 7)])

    def test_double_alloc(self):
        with pytest.raises(DoubleAllocError) as excinfo:
            count_trace([ev("alloc", 0), ev("alloc", 0)])
        assert excinfo.value.qubit_id == 0

    @pytest.mark.parametrize(
        "event",
        [
            ev("t", 0, 1),
            ev("rz"),
            ev("measure", 0, 1, 2),
            ev("ccz", 0, 1),
            ev("ccz", 0, 1, 1),
            ev("ccix", 0, 0, 1),
            ev("clifford", 0, 1, 2),
            ev("alloc"),
            ev("t", -1),
        ],
    )
    def test_arity_mismatches(self, event):
        prelude = [ev("alloc", 0, 1, 2)]
        with pytest.raises(ArityMismatchError) as excinfo:
            count_trace(prelude + [event])
        assert excinfo.value.event_index == 1

    def test_unknown_op_is_hard_error(self):
        with pytest.raises(TraceFormatError):
            count_trace([TraceEvent("h", (0,))])


class TestCountsFromEstimates:
    def test_pass_through(self):
        counts = LogicalCounts(
            num_qubits=9,
            t_count=10,
            rotation_count=4,
            rotation_depth=2,
            ccz_count=3,
            ccix_count=1,
            measurement_count=5,
        )
        assert counts_from_estimates(counts) is counts

    def test_all_zero(self):
        assert counts_from_estimates(LogicalCounts()) == LogicalCounts()

    def test_mapping_input(self):
        counts = counts_from_estimates({"numQubits": 2, "tCount": 7})
        assert counts == LogicalCounts(num_qubits=2, t_count=7)

    def test_depth_without_rotations_rejected(self):
        with pytest.raises(InvalidCountsError):
            counts_from_estimates({"rotationCount": 0, "rotationDepth": 1})

    def test_depth_above_count_rejected(self):
        with pytest.raises(InvalidCountsError):
            LogicalCounts(rotation_count=2, rotation_depth=3)

    def test_rotations_without_depth_rejected(self):
        with pytest.raises(InvalidCountsError):
            LogicalCounts(rotation_count=2, rotation_depth=0)

    def test_negative_rejected(self):
        with pytest.raises(InvalidCountsError):
            LogicalCounts(t_count=-1)

    def test_unknown_field_rejected(self):
        with pytest.raises(InvalidCountsError):
            LogicalCounts.from_mapping({"tGateCount": 1})


class TestTraceFiles:
    def test_parse_lines(self):
        lines = [
            '{"op":"alloc","q":[0,1,2]}',
            "",
            '{"op":"ccz","q":[0,1,2]}',
            '{"op":"measure","q":[0]}',
        ]
        events = list(parse_trace_lines(lines))
        assert events == [ev("alloc", 0, 1, 2), ev("ccz", 0, 1, 2), ev("measure", 0)]

    def test_unknown_op_rejected(self):
        with pytest.raises(TraceFormatError):
            list(parse_trace_lines(['{"op":"cnot","q":[0,1]}']))

    def test_bad_json_rejected(self):
        with pytest.raises(TraceFormatError):
            list(parse_trace_lines(["{op: alloc}"]))

    def test_missing_fields_rejected(self):
        with pytest.raises(TraceFormatError):
            list(parse_trace_lines(['{"op":"t"}']))

    def test_non_integer_ids_rejected(self):
        with pytest.raises(TraceFormatError):
            list(parse_trace_lines(['{"op":"t","q":[0.5]}']))

    def test_read_trace_round_trip(self, tmp_path):
        path = tmp_path / "trace.jsonl"
        path.write_text('{"op":"alloc","q":[0]}\n{"op":"rz","q":[0]}\n')
        counts = count_trace(read_trace(path))
        assert counts == LogicalCounts(num_qubits=1, rotation_count=1, rotation_depth=1)


# ---------------------------------------------------------------------------
# randomized properties


def random_trace(rng: random.Random, max_events: int = 50):
    """Random well-formed trace over a small qubit pool."""
    events = []
    live = set()
    next_id = 0
    for _ in range(rng.randint(0, max_events)):
        roll = rng.random()
        if roll < 0.2 or len(live) < 3:
            fresh = [next_id + i for i in range(rng.randint(1, 3))]
            next_id += len(fresh)
            live.update(fresh)
            events.append(ev("alloc", *fresh))
        elif roll < 0.3 and len(live) > 3:
            victim = rng.choice(sorted(live))
            live.discard(victim)
            events.append(ev("release", victim))
        else:
            op = rng.choice(("t", "rz", "rz", "measure", "ccz", "ccix", "clifford"))
            if op in ("ccz", "ccix"):
                qubits = rng.sample(sorted(live), 3)
            elif op == "clifford":
                qubits = rng.sample(sorted(live), rng.randint(1, 2))
            else:
                qubits = [rng.choice(sorted(live))]
            events.append(ev(op, *qubits))
    return events


def test_rotation_depth_matches_oracle_on_random_traces():
    rng = random.Random(777)
    for _ in range(300):
        trace = random_trace(rng)
        assert count_trace(trace).rotation_depth == rotation_depth_oracle(trace)


def test_width_property_interleaved_alloc():
    rng = random.Random(31337)
    for _ in range(100):
        trace = random_trace(rng, max_events=20)
        counts = count_trace(trace)
        live_now = set()
        for event in trace:
            if event.op == "alloc":
                live_now.update(event.qubits)
            elif event.op == "release":
                live_now.difference_update(event.qubits)
        k = len(live_now)
        extended = trace + [ev("alloc", 10_000), ev("release", 10_000)]
        assert count_trace(extended).num_qubits >= k + 1
        assert count_trace(extended).num_qubits >= counts.num_qubits


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.data())
def test_disjoint_permutation_invariance(seed, data):
    rng = random.Random(seed)
    left = random_trace(rng, max_events=15)
    right = [ev(e.op, *(q + 1000 for q in e.qubits)) for e in random_trace(rng, 15)]
    # interleave the two disjoint traces in a data-driven order
    order = data.draw(st.permutations(["L"] * len(left) + ["R"] * len(right)))
    merged = []
    li = ri = 0
    for tag in order:
        if tag == "L":
            merged.append(left[li])
            li += 1
        else:
            merged.append(right[ri])
            ri += 1
    separate = count_trace(left + right)
    interleaved = count_trace(merged)
    assert interleaved.t_count == separate.t_count
    assert interleaved.rotation_count == separate.rotation_count
    assert interleaved.ccz_count == separate.ccz_count
    assert interleaved.ccix_count == separate.ccix_count
    assert interleaved.measurement_count == separate.measurement_count
    assert interleaved.rotation_depth == separate.rotation_depth
