import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcn_decoupling.bcn import (BCNet, compose_inputs, gamma_set, input_bit, omega_set, output_table, simulate,
                                step, transition_table)
from bcn_decoupling.stp import DeltaVector, LogicalMatrix, stp_chain

from netgen import fixture_net, random_net
from worked_examples import EX2_GAMMA


@pytest.fixture(scope="module")
def ex1():
    return fixture_net("example1")


@pytest.fixture(scope="module")
def ex2():
    return fixture_net("example2")


class TestConstruction:
    def test_rejects_wrong_L_shape(self):
        with pytest.raises(ValueError):
            BCNet(1, 1, 1, LogicalMatrix(2, [1, 2]), [LogicalMatrix(2, [1, 2])])

    def test_rejects_wrong_H_count(self):
        with pytest.raises(ValueError):
            BCNet(1, 1, 2, LogicalMatrix(2, [1, 2, 1, 2]), [LogicalMatrix(2, [1, 2])])

    def test_rejects_wrong_H_shape(self):
        with pytest.raises(ValueError):
            BCNet(1, 1, 1, LogicalMatrix(2, [1, 2, 1, 2]), [LogicalMatrix(2, [1, 2, 1])])

    def test_sizes(self, ex1):
        assert (ex1.num_states, ex1.num_inputs) == (8, 4)


class TestPartitions:
    def test_example2_gamma_sets(self, ex2):
        for (i, j), states in EX2_GAMMA.items():
            assert gamma_set(ex2, i, j) == states

    def test_gamma_partitions_states(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            net = random_net(rng, 3, 2, 2)
            for i in (1, 2):
                both = gamma_set(net, i, 1) + gamma_set(net, i, 2)
                assert sorted(both) == list(range(1, 9))

    def test_omega_sets(self):
        assert omega_set(1, 1, 2) == [1, 2]
        assert omega_set(1, 2, 2) == [3, 4]
        assert omega_set(2, 1, 2) == [1, 3]
        assert omega_set(2, 2, 2) == [2, 4]

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_omega_partitions_inputs(self, m):
        for i in range(1, m + 1):
            a, b = omega_set(i, 1, m), omega_set(i, 2, m)
            assert len(a) == len(b) == 2 ** (m - 1)
            assert sorted(a + b) == list(range(1, 2 ** m + 1))

    def test_channel_errors(self, ex1):
        with pytest.raises(IndexError):
            gamma_set(ex1, 3, 1)
        with pytest.raises(ValueError):
            gamma_set(ex1, 1, 3)
        with pytest.raises(IndexError):
            omega_set(0, 1, 2)

    def test_input_bit_vectorised(self):
        assert input_bit(np.arange(1, 9), 2, 3).tolist() == [1, 1, 2, 2, 1, 1, 2, 2]


class TestStep:
    def test_step_matches_stp(self, ex1):
        for u in range(1, 5):
            for x in range(1, 9):
                expected = stp_chain(ex1.L, DeltaVector(4, u), DeltaVector(8, x))
                assert step(ex1, u, x) == expected

    def test_tables(self, ex1):
        T = transition_table(ex1)
        assert T[2, 4] == ex1.L.idx[2 * 8 + 4]
        assert output_table(ex1, 1)[0, 0] == ex1.H[0].idx[T[0, 0] - 1]

    def test_step_rejects_bad_index(self, ex1):
        with pytest.raises(ValueError):
            step(ex1, 5, 1)
        with pytest.raises(ValueError):
            step(ex1, DeltaVector(2, 1), 1)


class TestSimulate:
    def test_zero_steps(self, ex1):
        traj = simulate(ex1, 5, [])
        assert len(traj) == 1 and traj.output_indices().tolist() == [[2, 1]]

    def test_example1_first_channel_follows_input(self, ex1):
        rng = np.random.default_rng(11)
        u2 = rng.integers(1, 3, size=10).tolist()
        traj = simulate(ex1, 5, compose_inputs([[1] * 10, u2]))
        assert (traj.output_indices()[1:, 0] == 1).all()

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2 ** 31), st.integers(0, 12), st.integers(0, 12))
    def test_prefix_property(self, seed, t1, t2):
        rng = np.random.default_rng(seed)
        net = random_net(rng, 3, 2, 2)
        inputs = rng.integers(1, 5, size=t1 + t2).tolist()
        full = simulate(net, 1, inputs)
        part = simulate(net, 1, inputs[:t1])
        assert full.states[:t1 + 1] == part.states

    def test_compose_inputs(self):
        assert compose_inputs([[1, 2, 2], [2, 1, 2]]) == [2, 3, 4]

    def test_compose_inputs_errors(self):
        with pytest.raises(ValueError):
            compose_inputs([])
        with pytest.raises(ValueError):
            compose_inputs([[1], [1, 2]])
