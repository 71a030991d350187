import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import identity_machine
from ratgroup import MachineError, ParseError, Transducer, fp, x0
from ratgroup.generators import GeneratorSpec, gen_machine, shuffle_states
from ratgroup.transducer import (
    eval_prefix,
    isomorphic,
    lcp,
    parse,
    run,
    serialize,
    to_dot,
    validate,
    words_upto,
)

bits = st.text(alphabet="01", max_size=12)


def machines():
    return st.integers(0, 10**6).map(lambda s: gen_machine(GeneratorSpec(seed=s, max_states=6)))


class TestValidate:
    def test_two_state_ok(self, two_state):
        assert validate(two_state) == []

    def test_identity_ok(self, ident):
        assert validate(ident) == []

    def test_missing_transition(self):
        T = Transducer([(1, 0), (0, None)], [("", "11"), ("0", "10")])
        problems = validate(T)
        assert any("missing transition" in p for p in problems)

    def test_dangling_and_bad_output(self):
        T = Transducer([(0, 5)], [("0", "12")])
        problems = validate(T)
        assert any("dangling" in p for p in problems)
        assert any("not a binary word" in p for p in problems)

    def test_empty(self):
        assert validate(Transducer([], [])) == ["empty state set"]


class TestRun:
    def test_two_state_example(self, two_state):
        traj = run(two_state, 0, "01")
        assert traj.emitted == "10"
        assert traj.final == 0
        assert traj.visited == (0, 1, 0)

    def test_empty_word(self, two_state):
        assert run(two_state, 1, "") == ((1,), "", 1)

    def test_fp2_hand_walk(self):
        assert run(fp(2).forward, 0, "0011").emitted == "0110"

    def test_unknown_state(self, two_state):
        with pytest.raises(KeyError):
            run(two_state, 7, "0")

    @given(machines(), bits, bits)
    def test_concatenation(self, T, u, v):
        for s in T.states:
            whole = run(T, s, u + v)
            first = run(T, s, u)
            second = run(T, first.final, v)
            assert whole.emitted == first.emitted + second.emitted
            assert whole.final == second.final
            assert len(whole.visited) == len(u + v) + 1


class TestEvalPrefix:
    def test_two_state(self, two_state):
        assert eval_prefix(two_state, "1") == "11"

    def test_identity(self, ident):
        for w in words_upto(6):
            assert eval_prefix(ident, w) == w

    def test_x0(self):
        assert eval_prefix(x0().forward, "01") == "10"

    @given(machines(), bits, bits)
    def test_monotone(self, T, u, v):
        assert eval_prefix(T, u + v).startswith(eval_prefix(T, u))


def test_lcp():
    assert lcp("0110", "0101") == "01"
    assert lcp("", "1") == ""


class TestInterchange:
    def test_two_state_roundtrip(self, two_state):
        text = serialize(two_state)
        data = json.loads(text)
        assert data["states"] == ["s0", "s1"]
        assert data["transitions"]["s0"]["0"] == {"out": "", "to": "s1"}
        assert data["transitions"]["s1"]["1"] == {"out": "10", "to": "s0"}
        back = parse(text)
        assert isomorphic(back, two_state)
        assert back.names == ("s0", "s1")

    def test_empty_states(self):
        text = json.dumps({"states": [], "initial": "a", "transitions": {}})
        with pytest.raises(MachineError, match="empty state set"):
            parse(text)

    def test_bad_output_symbol(self):
        text = '{"states": ["a"], "initial": "a",\n "transitions": {"a": {"0": {"out": "2", "to": "a"},\n  "1": {"out": "1", "to": "a"}}}}'
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.line == 2
        assert "'2'" in str(info.value)

    def test_json_syntax_error(self):
        with pytest.raises(ParseError) as info:
            parse('{"states": [\n  "a",,]}')
        assert info.value.line == 2

    def test_missing_transition_is_semantic(self):
        text = json.dumps({"states": ["a"], "initial": "a", "transitions": {"a": {"0": {"out": "", "to": "a"}}}})
        with pytest.raises(MachineError, match="missing transition"):
            parse(text)

    def test_unknown_initial(self):
        text = json.dumps({"states": ["a"], "initial": "b",
                           "transitions": {"a": {"0": {"out": "0", "to": "a"}, "1": {"out": "1", "to": "a"}}}})
        with pytest.raises(MachineError, match="initial"):
            parse(text)

    @settings(max_examples=50)
    @given(st.integers(0, 10**6))
    def test_roundtrip_up_to_renaming(self, seed):
        spec = GeneratorSpec(seed=seed, max_states=6)
        T = gen_machine(spec)
        shuffled = shuffle_states(T, spec.rng("shuffle"))
        assert isomorphic(parse(serialize(shuffled)), T)


class TestDot:
    def test_two_state_labels(self, two_state):
        dot = to_dot(two_state)
        for label in ("0|ε", "1|11", "0|0", "1|10"):
            assert label in dot
        assert dot.count("shape=doublecircle") == 1
        assert '"s1" -> "s0" [label="0|0\\n1|10"]' in dot

    def test_identity(self):
        dot = to_dot(identity_machine())
        assert '"q" -> "q" [label="0|0\\n1|1"]' in dot
        assert dot.count("shape=circle") + dot.count("shape=doublecircle") == 1

    def test_f3_cycle(self):
        dot = to_dot(fp(3).forward)
        assert '"q1" -> "q2" [label="0|0\\n1|1"]' in dot
        assert '"q2" -> "q3"' in dot
        assert '"q3" -> "q1" [label="0|1\\n1|0"]' in dot
        assert dot.count(" -> ") == 4  # three cycle edges plus the start arrow
