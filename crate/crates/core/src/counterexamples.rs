//! Builders and end-to-end checks for two instances where `M(L₁ ∗ L₂ ∗ L₃)`
//! is strictly smaller than the matroid induced by `r₁ + r₂ + r₃ − 2`.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field::PrimeField;
use crate::hadamard::{
    algebraic_matroid_rank_numeric, all_bracketings, conjecture_value, nested_upper_bound,
    pair_matroid_rank, BoundMethod, Bracketing, HadamardInstance, LinearSpaceRep, RankNode,
};
use crate::matrix::Matrix;
use crate::matroids::{
    bicircular_representation, graphic_representation, hypergraph_incidence,
    partition_matroid_representation, pebble_game_rank, CountMatroid, DPartiteHypergraph, Graph,
    MatroidRank,
};
use crate::setfunc::{Subset, DEFAULT_CAP};

pub const GADGETS: usize = 4;

/// Vertices of gadget `g`: private vertices `4g..4g+4`, then the two shared
/// vertices `16+g` and `16+(g+1) mod 4`, which are not adjacent.
pub fn fig1_gadget_vertices(g: usize) -> [usize; 6] {
    let base = 4 * g;
    [
        base,
        base + 1,
        base + 2,
        base + 3,
        16 + g,
        16 + (g + 1) % GADGETS,
    ]
}

/// Four copies of `K₆` minus an edge, glued in a cycle at the endpoints of
/// the missing edges. Edges of gadget `g` occupy indices `14g..14g+14`.
pub fn fig1_graph() -> Graph {
    let mut edges = Vec::with_capacity(56);
    for g in 0..GADGETS {
        let vs = fig1_gadget_vertices(g);
        for a in 0..6 {
            for b in a + 1..6 {
                if (a, b) != (4, 5) {
                    edges.push((vs[a], vs[b]));
                }
            }
        }
    }
    Graph::new(4 * GADGETS + GADGETS, edges).expect("valid construction")
}

/// Classes of size 3 and the 6 edges `(j₁,j₂,j₃)` with distinct entries, in
/// lexicographic order.
pub fn ce2_hypergraph() -> DPartiteHypergraph {
    DPartiteHypergraph::new(
        vec![3, 3, 3],
        PERMUTATIONS.iter().map(|p| p.to_vec()).collect(),
    )
    .expect("valid construction")
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The printed incidence matrix, rows over edges and columns over the three classes.
pub const CE2_DISPLAYED: [[u8; 9]; 6] = [
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 1, 0, 1, 0, 0],
];

fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of each edge read as a permutation.
pub fn ce2_sign_vector(h: &DPartiteHypergraph) -> Vec<i64> {
    h.edges().iter().map(|e| permutation_sign(e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CheckValue {
    Int(i64),
    Bool(bool),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: &'static str,
    pub relation: Relation,
    pub expected: CheckValue,
    pub actual: CheckValue,
    pub pass: bool,
}

impl SubCheck {
    fn eq(name: &'static str, expected: i64, actual: i64) -> Self {
        SubCheck {
            name,
            relation: Relation::Eq,
            expected: CheckValue::Int(expected),
            actual: CheckValue::Int(actual),
            pass: expected == actual,
        }
    }

    fn le(name: &'static str, bound: i64, actual: i64) -> Self {
        SubCheck {
            name,
            relation: Relation::Le,
            expected: CheckValue::Int(bound),
            actual: CheckValue::Int(actual),
            pass: actual <= bound,
        }
    }

    fn holds(name: &'static str, actual: bool) -> Self {
        SubCheck {
            name,
            relation: Relation::Eq,
            expected: CheckValue::Bool(true),
            actual: CheckValue::Bool(actual),
            pass: actual,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Violated,
    NotViolated,
    CheckFailed,
}

fn first_failure(checks: &[SubCheck]) -> Option<&SubCheck> {
    checks.iter().find(|c| !c.pass)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ce1Report {
    pub vertices: usize,
    pub edges: usize,
    pub rank_34: i64,
    pub rank_23: i64,
    pub bicircular_rank: i64,
    pub graphic_rank: i64,
    pub nested_bound: i64,
    pub conjecture_value: i64,
    pub numeric_dimension: i64,
    pub numeric_trials: Vec<usize>,
    pub gap: i64,
    pub checks: Vec<SubCheck>,
    pub verdict: Verdict,
}

impl Ce1Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&SubCheck> {
        first_failure(&self.checks)
    }
}

/// Graphic, graphic and bicircular factors on the figure graph.
pub fn ce1_instance<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Result<HadamardInstance> {
    let g = fig1_graph();
    let graphic = LinearSpaceRep::from_spanning(graphic_representation(field, &g, None)?.rep());
    let bicircular =
        LinearSpaceRep::from_spanning(bicircular_representation(field, &g, rng)?.rep());
    HadamardInstance::new(vec![graphic.clone(), graphic, bicircular])
}

pub fn verify_counterexample1<R: Rng + ?Sized>(
    field: PrimeField,
    trials: usize,
    rng: &mut R,
) -> Result<Ce1Report> {
    let g = Arc::new(fig1_graph());
    let (n, m) = (g.vertex_count(), g.edge_count());
    let all: Vec<usize> = (0..m).collect();
    let rank = |k, l| pebble_game_rank(&g, k, l, &all).map(|r| r as i64);
    let (rank_34, rank_23, bicircular_rank, graphic_rank) =
        (rank(3, 4)?, rank(2, 3)?, rank(1, 0)?, rank(1, 1)?);

    let mut checks = vec![
        SubCheck::eq("vertices", 20, n as i64),
        SubCheck::eq("edges", 3 * n as i64 - 4, m as i64),
    ];
    let gadgets_tight = (0..GADGETS).all(|gi| {
        let edges: Vec<usize> = (14 * gi..14 * gi + 14).collect();
        pebble_game_rank(&g, 3, 4, &edges).ok() == Some(3 * 6 - 4)
    });
    checks.push(SubCheck::holds("gadgets_34_tight", gadgets_tight));
    checks.push(SubCheck::eq("rank_34", 3 * n as i64 - 4, rank_34));
    checks.push(SubCheck::eq("rank_23", 36, rank_23));
    checks.push(SubCheck::eq("bicircular_rank", n as i64, bicircular_rank));

    let graphic = || CountMatroid::new(g.clone(), 1, 1).map(RankNode::count);
    let leaves = vec![
        graphic()?,
        graphic()?,
        RankNode::count(CountMatroid::new(g.clone(), 1, 0)?),
    ];
    let grouping: Bracketing = "((1,2),3)".parse()?;
    let nested =
        nested_upper_bound(&leaves, &all, &grouping, BoundMethod::Union, DEFAULT_CAP)? as i64;
    checks.push(SubCheck::le(
        "nested_bound",
        rank_23 + bicircular_rank - 1,
        nested,
    ));
    let conj = conjecture_value(&leaves, &all, BoundMethod::Union, DEFAULT_CAP)? as i64;
    checks.push(SubCheck::eq("conjecture_value", rank_34, conj));

    let inst = ce1_instance(field, rng)?;
    let numeric = algebraic_matroid_rank_numeric(&inst, &all, trials, rng)?;
    let dim = numeric.rank as i64;
    checks.push(SubCheck::le("numeric_dimension", nested, dim));

    let verdict = if first_failure(&checks).is_some() {
        Verdict::CheckFailed
    } else if dim < conj {
        Verdict::Violated
    } else {
        Verdict::NotViolated
    };
    Ok(Ce1Report {
        vertices: n,
        edges: m,
        rank_34,
        rank_23,
        bicircular_rank,
        graphic_rank,
        nested_bound: nested,
        conjecture_value: conj,
        numeric_dimension: dim,
        numeric_trials: numeric.trials,
        gap: conj - dim,
        checks,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationBound {
    pub grouping: String,
    pub rank: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ce2Report {
    pub edges: usize,
    pub rank: i64,
    pub sign_vector: Vec<i64>,
    pub nested_bounds: Vec<PermutationBound>,
    pub sharper_bound: i64,
    pub conjecture_value: i64,
    pub numeric_dimension: i64,
    pub numeric_trials: Vec<usize>,
    pub checks: Vec<SubCheck>,
    pub verdict: Verdict,
}

impl Ce2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&SubCheck> {
        first_failure(&self.checks)
    }
}

fn rows_sorted(rows: impl Iterator<Item = Vec<u8>>) -> Vec<Vec<u8>> {
    let mut v: Vec<Vec<u8>> = rows.collect();
    v.sort();
    v
}

/// Whether two 6×9 incidence matrices agree after permuting rows, the
/// classes, and the columns within each class.
pub fn incidence_matches_displayed(inc: &Matrix) -> bool {
    if inc.rows() != 6 || inc.cols() != 9 {
        return false;
    }
    let target = rows_sorted(CE2_DISPLAYED.iter().map(|r| r.to_vec()));
    let perms3 = PERMUTATIONS;
    for classes in &perms3 {
        for p0 in &perms3 {
            for p1 in &perms3 {
                for p2 in &perms3 {
                    let within = [p0, p1, p2];
                    let cols: Vec<usize> = (0..9)
                        .map(|c| {
                            let (cls, j) = (c / 3, c % 3);
                            3 * classes[cls] + within[cls][j]
                        })
                        .collect();
                    let candidate = rows_sorted(
                        (0..6).map(|r| cols.iter().map(|&c| inc.get(r, c) as u8).collect()),
                    );
                    if candidate == target {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn verify_counterexample2<R: Rng + ?Sized>(
    field: PrimeField,
    trials: usize,
    rng: &mut R,
) -> Result<Ce2Report> {
    let h = ce2_hypergraph();
    let m = h.edge_count();
    let all: Vec<usize> = (0..m).collect();
    let mut checks = vec![SubCheck::eq("edges", 6, m as i64)];
    let degrees_two =
        (0..3).all(|c| (0..3).all(|j| h.edges().iter().filter(|e| e[c] == j).count() == 2));
    checks.push(SubCheck::holds("vertex_degrees", degrees_two));

    let inc = hypergraph_incidence(field, &h)?;
    checks.push(SubCheck::holds(
        "incidence_matches",
        incidence_matches_displayed(&inc),
    ));
    let rank = inc.rank() as i64;
    checks.push(SubCheck::eq("rank", 5, rank));
    let signs = ce2_sign_vector(&h);
    let reduced: Vec<u64> = signs.iter().map(|&s| field.reduce(s)).collect();
    let in_kernel = inc.vec_mul(&reduced)?.iter().all(|&x| x == 0);
    checks.push(SubCheck::holds("sign_vector_in_left_kernel", in_kernel));

    let factors = (0..3)
        .map(|c| partition_matroid_representation(field, &h, c))
        .collect::<Result<Vec<_>>>()?;
    let leaves: Vec<RankNode> = factors.iter().cloned().map(RankNode::linear).collect();
    let mut nested_bounds = Vec::new();
    for sigma in &PERMUTATIONS {
        let grouping = Bracketing::left_comb(sigma)?;
        let r =
            nested_upper_bound(&leaves, &all, &grouping, BoundMethod::Union, DEFAULT_CAP)? as i64;
        let exhaustive = nested_upper_bound(
            &leaves,
            &all,
            &grouping,
            BoundMethod::Exhaustive,
            DEFAULT_CAP,
        )? as i64;
        checks.push(SubCheck::eq("nested_bound_methods_agree", r, exhaustive));
        nested_bounds.push(PermutationBound {
            grouping: grouping.to_string(),
            rank: r,
        });
    }
    let all_independent = nested_bounds.iter().all(|b| b.rank == m as i64);
    checks.push(SubCheck::holds(
        "independent_under_all_groupings",
        all_independent,
    ));
    let sharper = all_bracketings(3)
        .iter()
        .map(|b| {
            nested_upper_bound(&leaves, &all, b, BoundMethod::Union, DEFAULT_CAP).map(|r| r as i64)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or(0);

    let r1 = MatroidRank::new(factors[0].clone())?;
    let r2 = MatroidRank::new(factors[1].clone())?;
    let full = Subset::full(m);
    let mut cycle_ok = true;
    for s in full.subsets().filter(|s| !s.is_empty()) {
        let expected = if s == full {
            m as i64 - 1
        } else {
            s.len() as i64
        };
        cycle_ok &= pair_matroid_rank(&r1, &r2, s, DEFAULT_CAP)? == expected;
    }
    checks.push(SubCheck::holds("first_two_classes_form_a_cycle", cycle_ok));

    let conj = conjecture_value(&leaves, &all, BoundMethod::Union, DEFAULT_CAP)? as i64;
    checks.push(SubCheck::eq("conjecture_value", 6, conj));

    let inst = HadamardInstance::new(
        factors
            .iter()
            .map(|f| LinearSpaceRep::new(f.rep().clone()))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let numeric = algebraic_matroid_rank_numeric(&inst, &all, trials, rng)?;
    let dim = numeric.rank as i64;
    checks.push(SubCheck::eq("numeric_dimension", 5, dim));

    let verdict = if first_failure(&checks).is_some() {
        Verdict::CheckFailed
    } else if dim < conj && dim < sharper {
        Verdict::Violated
    } else {
        Verdict::NotViolated
    };
    Ok(Ce2Report {
        edges: m,
        rank,
        sign_vector: signs,
        nested_bounds,
        sharper_bound: sharper,
        conjecture_value: conj,
        numeric_dimension: dim,
        numeric_trials: numeric.trials,
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn fig1_shape() {
        let g = fig1_graph();
        assert_eq!((g.vertex_count(), g.edge_count()), (20, 56));
        assert_eq!(g.edge_count(), 3 * g.vertex_count() - 4);
        assert!(g.is_connected());
        let mut degree = [0; 20];
        for &(u, v) in g.edges() {
            degree[u] += 1;
            degree[v] += 1;
        }
        assert!(degree[..16].iter().all(|&d| d == 5));
        assert!(degree[16..].iter().all(|&d| d == 8));
        assert_eq!(fig1_graph(), g);
    }

    #[test]
    fn fig1_subchecks() {
        let g = fig1_graph();
        let all: Vec<usize> = (0..56).collect();
        assert_eq!(pebble_game_rank(&g, 3, 4, &all).unwrap(), 56);
        assert_eq!(pebble_game_rank(&g, 1, 0, &all).unwrap(), 20);
        assert_eq!(pebble_game_rank(&g, 2, 3, &all).unwrap(), 36);
        assert_eq!(pebble_game_rank(&g, 1, 1, &all).unwrap(), 19);
    }

    #[test]
    fn ce2_shape() {
        let h = ce2_hypergraph();
        assert_eq!(ce2_sign_vector(&h), vec![1, -1, -1, 1, 1, -1]);
        let inc = hypergraph_incidence(PrimeField::default(), &h).unwrap();
        let displayed = Matrix::from_fn(PrimeField::default(), 6, 9, |i, j| {
            CE2_DISPLAYED[i][j] as u64
        });
        assert_eq!(inc, displayed);
        assert!(incidence_matches_displayed(&inc));
        let mut swapped = CE2_DISPLAYED;
        swapped[0].swap(0, 1);
        let wrong = Matrix::from_fn(PrimeField::default(), 6, 9, |i, j| swapped[i][j] as u64);
        assert!(!incidence_matches_displayed(&wrong));
    }

    #[test]
    fn counterexample2_report() {
        let r = verify_counterexample2(PrimeField::default(), 3, &mut seeded(0)).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(
            (
                r.rank,
                r.conjecture_value,
                r.numeric_dimension,
                r.sharper_bound
            ),
            (5, 6, 5, 6)
        );
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn counterexample1_report() {
        let r = verify_counterexample1(PrimeField::default(), 3, &mut seeded(0)).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(
            (
                r.rank_34,
                r.rank_23,
                r.bicircular_rank,
                r.nested_bound,
                r.conjecture_value
            ),
            (56, 36, 20, 55, 56)
        );
        assert!(r.numeric_dimension <= 55);
        assert_eq!(r.gap, 56 - r.numeric_dimension);
        assert_eq!(r.verdict, Verdict::Violated);
    }
}
