"""Machine-to-line compilation: sizes, bijection, lockstep, halt cascade."""

import pytest

from interax import (
    ModelError,
    Outcome,
    StatePredicate,
    accept_predicate,
    brute_force_reachable,
    classify,
    compile_lsa,
    config_to_gstate,
    explore,
    extend_halt_propagation,
    gstate_to_config,
    initial_config,
    is_reachable,
    run_tm,
    successors,
    tm_step,
    validate_system,
)
from interax.fixtures import even_a, first_last
from interax.turing import Configuration


class TestCompile:
    def test_even_a_on_aa_shape(self):
        sys_m = compile_lsa(even_a(), "aa")
        assert validate_system(sys_m).ok
        assert sys_m.model.components == ("0", "1", "2", "3")
        # |Q_i| = (|P| + 1) * |tape alphabet| for every cell
        for c in sys_m.model.components:
            assert len(set(sys_m.behaviors[c].states)) == (4 + 1) * 2
        # interactions: one per rule and feasible cell pair; 4 rules x 3 pairs
        assert len(sys_m.model.interactions) == 12

    def test_port_count_bounds(self):
        m = even_a()
        for word in ("", "a", "aa", "aaa"):
            sys_m = compile_lsa(m, word)
            bound = 2 * len(m.states) * len(m.tape_alphabet)
            for c in sys_m.model.components:
                assert len(sys_m.model.ports[c]) <= bound

    def test_interaction_count_per_neighbor_pair(self):
        # each adjacent cell pair carries at most one interaction per rule
        m = even_a()
        rules = len(m.delta)
        for word in ("", "a", "aa", "aaaa"):
            sys_m = compile_lsa(m, word)
            pairs = len(sys_m.model.components) - 1
            assert len(sys_m.model.interactions) <= pairs * rules

    def test_classifies_linear(self):
        assert classify(compile_lsa(even_a(), "a").model).linear
        assert classify(compile_lsa(first_last(), "0110").model).linear

    def test_boundary_cells_omit_offtape_ports(self):
        sys_m = compile_lsa(even_a(), "aa")
        # cell 0: leaving needs a right move, arriving needs a left move
        assert set(sys_m.model.ports["0"]) == {
            "L:even:a",
            "L:odd:a",
            "A:even:b",
            "A:odd:b",
        }
        assert set(sys_m.model.ports["3"]) == {
            "L:even:b",
            "L:odd:b",
            "A:even:a",
            "A:odd:a",
        }

    def test_initial_states_from_word(self):
        sys_m = compile_lsa(even_a(), "aa")
        assert sys_m.initial_state() == ("s,b", "even,a", "s,a", "s,b")

    def test_empty_word_initial_head_on_blank(self):
        sys_m = compile_lsa(even_a(), "")
        assert sys_m.model.components == ("0", "1")
        assert sys_m.initial_state() == ("s,b", "even,b")

    def test_bad_input_rejected(self):
        with pytest.raises(ModelError, match="outside the input alphabet"):
            compile_lsa(even_a(), "ab")


class TestAcceptPredicate:
    def test_count_is_cells_times_symbols(self):
        preds = accept_predicate(even_a(), "a")
        assert len(preds) == 3 * 2

    def test_each_predicate_single_exact_constraint(self):
        for pred in accept_predicate(first_last(), "01"):
            assert len(pred.constraints) == 1

    def test_never_empty(self):
        assert accept_predicate(even_a(), "")


class TestBijection:
    def test_initial_config_maps_to_initial_state(self):
        m = even_a()
        for word in ("", "a", "aa", "aaa"):
            sys_m = compile_lsa(m, word)
            mapped = config_to_gstate(m, word, initial_config(m, word))
            assert mapped == sys_m.initial_state()

    def test_one_step_image(self):
        m = even_a()
        c1 = tm_step(m, initial_config(m, "aa"))
        assert config_to_gstate(m, "aa", c1) == ("s,b", "s,a", "odd,a", "s,b")

    def test_round_trip_on_random_configurations(self):
        import random

        rng = random.Random(7)
        m = first_last()
        word = "010"
        cells = len(word) + 2
        non_halt = [p for p in m.states if p not in (m.accept, m.reject)]
        for _ in range(100):
            config = Configuration(
                rng.choice(non_halt),
                tuple(rng.choice(m.tape_alphabet) for _ in range(cells)),
                rng.randrange(cells),
            )
            assert gstate_to_config(m, word, config_to_gstate(m, word, config)) == config

    def test_all_marker_state_rejected(self):
        m = even_a()
        with pytest.raises(ModelError, match="0 head markers"):
            gstate_to_config(m, "a", ("s,b", "s,a", "s,b"))

    def test_two_head_markers_rejected(self):
        m = even_a()
        with pytest.raises(ModelError, match="2 head markers"):
            gstate_to_config(m, "a", ("even,b", "odd,a", "s,b"))

    def test_tape_length_mismatch_rejected(self):
        m = even_a()
        with pytest.raises(ModelError, match="tape length mismatch"):
            config_to_gstate(m, "aa", initial_config(m, "a"))


class TestLockstep:
    def test_unique_interaction_matches_machine_step(self):
        m = first_last()
        word = "0110"
        sys_m = compile_lsa(m, word)
        config = initial_config(m, word)
        while True:
            nxt = tm_step(m, config)
            if not isinstance(nxt, Configuration):
                break
            here = config_to_gstate(m, word, config)
            succ = successors(sys_m, here)
            assert len(succ) == 1
            assert succ[0][1] == config_to_gstate(m, word, nxt)
            config = nxt

    def test_equivalence_both_machines_short_words(self):
        for m, alphabet in ((even_a(), ["a"]), (first_last(), ["0", "1"])):
            frontier = [""]
            for _ in range(4):
                frontier = [w + s for w in frontier for s in alphabet]
            for word in [""] + frontier:
                accepted = run_tm(m, word).outcome is Outcome.ACCEPT
                reach = is_reachable(compile_lsa(m, word), accept_predicate(m, word))
                assert accepted == reach.reachable, word


class TestHaltExtension:
    def _done_predicate(self, ext, done):
        return StatePredicate.of(dict(zip(ext.model.components, done)))

    def test_accepting_word_reaches_distinguished_state(self):
        m = even_a()
        ext, done = extend_halt_propagation(compile_lsa(m, "aa"), m)
        assert validate_system(ext).ok
        result = is_reachable(ext, self._done_predicate(ext, done))
        assert result.reachable

    def test_rejecting_word_cannot_reach_it(self):
        m = even_a()
        ext, done = extend_halt_propagation(compile_lsa(m, "a"), m)
        result = is_reachable(ext, self._done_predicate(ext, done))
        assert not result.reachable
        assert result.complete

    def test_still_classifies_linear(self):
        m = even_a()
        for word in ("aa", "aaa"):
            ext, _ = extend_halt_propagation(compile_lsa(m, word), m)
            assert classify(ext.model).linear

    def test_oracle_crosscheck_small_inputs(self):
        # full-product oracle fits for words up to length one
        m = even_a()
        for word, expect in (("", True), ("a", False)):
            ext, done = extend_halt_propagation(compile_lsa(m, word), m)
            assert (done in brute_force_reachable(ext)) is expect

    def test_agrees_with_accept_predicate_reachability(self):
        for m, words in (
            (even_a(), ["", "a", "aa", "aaa"]),
            (first_last(), ["", "0", "01", "00", "010"]),
        ):
            for word in words:
                sys_m = compile_lsa(m, word)
                plain = is_reachable(sys_m, accept_predicate(m, word)).reachable
                ext, done = extend_halt_propagation(sys_m, m)
                extended = is_reachable(ext, self._done_predicate(ext, done)).reachable
                assert plain == extended, (word, plain, extended)

    def test_distinguished_state_is_all_done(self):
        m = even_a()
        ext, done = extend_halt_propagation(compile_lsa(m, "a"), m)
        assert set(done) == {"halt:done"}
        assert len(done) == len(ext.model.components)

    def test_rejects_non_compiled_input(self):
        from interax.fixtures import client_server

        with pytest.raises(ModelError, match="not in compiled shape"):
            extend_halt_propagation(client_server(2), even_a())

    def test_accepts_round_tripped_compile(self):
        from interax.formats import parse_system, serialize_system

        m = even_a()
        again = parse_system(serialize_system(compile_lsa(m, "aa")))
        ext, done = extend_halt_propagation(again, m)
        pred = StatePredicate.of(dict(zip(ext.model.components, done)))
        assert is_reachable(ext, pred).reachable

    def test_no_cascade_before_accept(self):
        # reachable states of the extension with a rejecting word never leave
        # the machine-mirroring fragment
        m = even_a()
        ext, _ = extend_halt_propagation(compile_lsa(m, "a"), m)
        for q in explore(ext).states:
            assert all(not s.startswith("halt:") for s in q)


class TestMarkerNamespacing:
    def test_marker_avoids_machine_state_names(self):
        m = even_a()
        clash = type(m)(
            tape_alphabet=m.tape_alphabet,
            input_alphabet=m.input_alphabet,
            blank=m.blank,
            states=("s", "s_", "accept", "reject"),
            initial="s",
            accept="accept",
            reject="reject",
            delta={
                ("s", "a"): ("s_", "a", 1),
                ("s_", "a"): ("s", "a", 1),
                ("s", "b"): ("accept", "b", -1),
                ("s_", "b"): ("reject", "b", -1),
            },
        )
        sys_m = compile_lsa(clash, "aa")
        assert validate_system(sys_m).ok
        # off-cell marker got padded past both machine states
        assert "s__,b" in sys_m.behaviors["0"].states
        run = run_tm(clash, "aa")
        reach = is_reachable(sys_m, accept_predicate(clash, "aa"))
        assert (run.outcome is Outcome.ACCEPT) == reach.reachable
