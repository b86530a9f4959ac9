"""Smoke test for the compiled `dilworth` extension module."""

import dilworth

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def signed_incidence(n, edges):
    rows = [[0] * n for _ in edges]
    for row, (u, v) in zip(rows, edges):
        row[u] = 1
        row[v] = -1
    return rows


def main():
    assert dilworth.matrix_rank([[1, 2], [2, 4]]) == 1
    assert dilworth.matrix_rank([[0, 0], [0, 0]]) == 0

    k4 = dilworth.Graph(4, K4_EDGES)
    assert k4.count_rank(2, 3) == 5
    assert k4.count_rank(1, 1) == 3

    # |F| + 1 on three elements
    values = [0] + [bin(m).count("1") + 1 for m in range(1, 8)]
    value, blocks = dilworth.dilworth_truncation(values)
    assert value == 4 and blocks == [[0, 1, 2]]
    assert dilworth.induced_matroid_rank(values) == 3

    y = signed_incidence(4, K4_EDGES)
    h = dilworth.HadamardProduct([y, y])
    assert h.m == 6 and h.dims == [3, 3]
    assert h.numeric_rank(seed=1)[0] == 5
    assert h.pair_rank() == 5
    assert h.bound() == 5
    assert h.conjecture_value() == 5

    comb, num = dilworth.amoeba_dim([[1, 0], [0, 1], [1, 1]], im=[[0, 0], [0, 0], [0, 1]])
    assert comb == num

    ys = dilworth.generic_witness_matrices([2, 3], 4)
    assert len(ys) == 2

    planes = [[[1, 0], [0, 1], [0, 0]], [[0, 0], [1, 0], [0, 1]], [[1, 0], [0, 0], [0, 1]]]
    check = dilworth.section_check(3, planes, codim=1, seed=7)
    assert check["pass"], check

    ce1 = dilworth.verify_ce1(seed=0)
    assert ce1["conjecture_value"] == 56 and ce1["numeric_dimension"] == 55
    assert ce1["verdict"] == "violated"
    assert dilworth.Graph.counterexample().edge_count == 56

    ce2 = dilworth.verify_ce2(seed=0)
    assert ce2["verdict"] == "violated", ce2

    print("smoke test passed")


if __name__ == "__main__":
    main()
