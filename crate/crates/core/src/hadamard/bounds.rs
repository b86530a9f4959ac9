//! Combinatorial upper bounds for `M(L₁ ∗ … ∗ L_d)` built from the factor
//! rank functions by iterated `(r_a + r_b − 1)^MD`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matroids::{
    graphic_bicircular_sum, CountMatroid, Graph, LinearMatroid, Matroid, TruncatedUnion,
    UniformMatroid,
};
use crate::setfunc::{
    dilworth_matroid_rank, DilworthTable, FnSetFunction, LocalIndex, SetFunction, Subset,
};

/// A matroid rank function used as a node of a bound.
///
/// Nodes that are the graphic or bicircular matroid of a graph remember it,
/// so sums of them can be recognised as count matroids.
#[derive(Clone)]
pub struct RankNode {
    matroid: Arc<dyn Matroid>,
    basic: Option<(Arc<Graph>, usize)>,
}

impl RankNode {
    pub fn linear(m: LinearMatroid) -> Self {
        RankNode {
            matroid: Arc::new(m),
            basic: None,
        }
    }

    pub fn count(m: CountMatroid) -> Self {
        let basic = match m.params() {
            (1, l) if l <= 1 => Some((m.graph().clone(), l)),
            _ => None,
        };
        RankNode {
            matroid: Arc::new(m),
            basic,
        }
    }

    pub fn matroid(m: Arc<dyn Matroid>) -> Self {
        RankNode {
            matroid: m,
            basic: None,
        }
    }

    pub fn as_matroid(&self) -> &Arc<dyn Matroid> {
        &self.matroid
    }

    pub fn ground_size(&self) -> usize {
        self.matroid.ground_size()
    }

    /// The node for `(Σ children − shift)^MD`.
    pub fn combine(children: &[RankNode], shift: usize) -> Result<RankNode> {
        let first = children
            .first()
            .ok_or_else(|| Error::InvalidParameter("combining no rank functions".into()))?;
        if let Some((graph, _)) = &first.basic {
            let same_graph = children.iter().all(|c| {
                c.basic
                    .as_ref()
                    .is_some_and(|(g, _)| Arc::ptr_eq(g, graph) || g == graph)
            });
            if same_graph {
                let a = children
                    .iter()
                    .filter(|c| c.basic.as_ref().is_some_and(|b| b.1 == 1))
                    .count();
                let b = children.len() - a;
                return Ok(match graphic_bicircular_sum(graph.clone(), a, b, shift) {
                    Some(cm) => RankNode::count(cm),
                    None => RankNode::matroid(Arc::new(UniformMatroid {
                        ground: graph.edge_count(),
                        rank: 0,
                    })),
                });
            }
        }
        let parts = children.iter().map(|c| c.matroid.clone()).collect();
        Ok(RankNode::matroid(Arc::new(TruncatedUnion::new(
            parts, shift,
        )?)))
    }
}

/// How bound values are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMethod {
    /// Matroid partitioning, with count-matroid shortcuts for graphic and
    /// bicircular sums. Polynomial in the number of elements.
    Union,
    /// Tables of `f^MD` over all subsets of `F`, limited by the cap.
    Exhaustive,
}

/// Binary bracketing of the factors `0..d`. Written 1-indexed, e.g. `((1,2),3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bracketing {
    Leaf(usize),
    Pair(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn pair(a: Bracketing, b: Bracketing) -> Bracketing {
        Bracketing::Pair(Box::new(a), Box::new(b))
    }

    /// `((o₁,o₂),o₃),…` over the given order of factors.
    pub fn left_comb(order: &[usize]) -> Result<Bracketing> {
        let (&first, rest) = order
            .split_first()
            .ok_or_else(|| Error::InvalidParameter("bracketing of no factors".into()))?;
        Ok(rest.iter().fold(Bracketing::Leaf(first), |acc, &i| {
            Bracketing::pair(acc, Bracketing::Leaf(i))
        }))
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            Bracketing::Leaf(i) => vec![*i],
            Bracketing::Pair(a, b) => {
                let mut l = a.leaves();
                l.extend(b.leaves());
                l
            }
        }
    }

    /// Checks that every factor `0..d` appears exactly once.
    pub fn validate(&self, d: usize) -> Result<()> {
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        if leaves != (0..d).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter(format!(
                "bracketing {self} must use each of the {d} factors exactly once"
            )));
        }
        Ok(())
    }

    fn parse_at(s: &[u8], pos: &mut usize) -> Result<Bracketing> {
        let err = |p: usize| Error::Input(format!("grouping: unexpected input at offset {p}"));
        match s.get(*pos) {
            Some(b'(') => {
                *pos += 1;
                let a = Bracketing::parse_at(s, pos)?;
                if s.get(*pos) != Some(&b',') {
                    return Err(err(*pos));
                }
                *pos += 1;
                let b = Bracketing::parse_at(s, pos)?;
                if s.get(*pos) != Some(&b')') {
                    return Err(err(*pos));
                }
                *pos += 1;
                Ok(Bracketing::pair(a, b))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = *pos;
                while s.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                    *pos += 1;
                }
                let n: usize = std::str::from_utf8(&s[start..*pos])
                    .expect("ascii digits")
                    .parse()
                    .map_err(|_| err(start))?;
                if n == 0 {
                    return Err(Error::Input("grouping: factors are numbered from 1".into()));
                }
                Ok(Bracketing::Leaf(n - 1))
            }
            _ => Err(err(*pos)),
        }
    }
}

impl FromStr for Bracketing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Bracketing> {
        let compact: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let b = Bracketing::parse_at(&compact, &mut pos)?;
        if pos != compact.len() {
            return Err(Error::Input(format!(
                "grouping: trailing input at offset {pos}"
            )));
        }
        Ok(b)
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracketing::Leaf(i) => write!(f, "{}", i + 1),
            Bracketing::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Every binary bracketing of `0..d`, treating `(A,B)` and `(B,A)` as equal.
pub fn all_bracketings(d: usize) -> Vec<Bracketing> {
    fn trees(items: &[usize]) -> Vec<Bracketing> {
        if items.len() == 1 {
            return vec![Bracketing::Leaf(items[0])];
        }
        let rest = &items[1..];
        let mut out = Vec::new();
        // the half containing items[0] takes a proper subset of the rest
        for mask in 0..(1u64 << rest.len()) - 1 {
            let mut left = vec![items[0]];
            let mut right = Vec::new();
            for (i, &x) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(x);
                } else {
                    right.push(x);
                }
            }
            for a in trees(&left) {
                for b in trees(&right) {
                    out.push(Bracketing::pair(a.clone(), b));
                }
            }
        }
        out
    }
    if d == 0 {
        return Vec::new();
    }
    trees(&(0..d).collect::<Vec<_>>())
}

fn without_loops(leaves: &[RankNode], elems: &[usize]) -> Vec<usize> {
    elems
        .iter()
        .copied()
        .filter(|&e| leaves.iter().all(|l| l.matroid.rank(&[e]) == 1))
        .collect()
}

fn check_elems(leaves: &[RankNode], elems: &[usize]) -> Result<()> {
    let m = leaves
        .first()
        .ok_or_else(|| Error::InvalidParameter("no factor rank functions".into()))?
        .ground_size();
    for l in leaves {
        if l.ground_size() != m {
            return Err(Error::DimensionMismatch {
                context: "factor ground sets",
                expected: m,
                found: l.ground_size(),
            });
        }
    }
    if let Some(&bad) = elems.iter().find(|&&e| e >= m) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: m,
        });
    }
    Ok(())
}

fn build(leaves: &[RankNode], b: &Bracketing) -> Result<RankNode> {
    match b {
        Bracketing::Leaf(i) => Ok(leaves[*i].clone()),
        Bracketing::Pair(x, y) => RankNode::combine(&[build(leaves, x)?, build(leaves, y)?], 1),
    }
}

/// Values of `(Σ children − shift)^MD` on every subset of the indexed set.
fn md_table(
    children: &[Vec<i64>],
    shift: i64,
    index: &LocalIndex,
    ground: usize,
    cap: usize,
) -> Result<Vec<i64>> {
    let f = FnSetFunction::new(ground, |s: Subset| {
        let mask = index.local(s);
        children.iter().map(|c| c[mask]).sum::<i64>() - shift
    });
    let set = *index.global.last().expect("nonempty index");
    let table = DilworthTable::matroid_rank(&f, set, cap)?;
    Ok(index
        .global
        .iter()
        .map(|&g| table.get(g).expect("tabulated"))
        .collect())
}

fn leaf_table(leaf: &RankNode, index: &LocalIndex) -> Vec<i64> {
    index
        .global
        .iter()
        .map(|g| leaf.matroid.rank(&g.elems()) as i64)
        .collect()
}

fn exhaustive_tables(
    leaves: &[RankNode],
    b: &Bracketing,
    index: &LocalIndex,
    cap: usize,
) -> Result<Vec<i64>> {
    match b {
        Bracketing::Leaf(i) => Ok(leaf_table(&leaves[*i], index)),
        Bracketing::Pair(x, y) => {
            let children = [
                exhaustive_tables(leaves, x, index, cap)?,
                exhaustive_tables(leaves, y, index, cap)?,
            ];
            md_table(&children, 1, index, leaves[0].ground_size(), cap)
        }
    }
}

fn exhaustive_index(elems: &[usize], ground: usize, cap: usize) -> Result<LocalIndex> {
    if ground > crate::setfunc::MAX_GROUND {
        return Err(Error::GroundSetTooLarge(ground));
    }
    if elems.len() > cap {
        return Err(Error::CapExceeded {
            size: elems.len(),
            cap,
        });
    }
    Ok(LocalIndex::new(Subset::from_elems(elems.iter().copied())))
}

/// Rank of `F` in the matroid obtained by combining the factor rank
/// functions pairwise along `bracketing`; an upper bound for the rank of `F`
/// in `M(L₁ ∗ … ∗ L_d)`. Loops of any factor are removed first.
pub fn nested_upper_bound(
    leaves: &[RankNode],
    elems: &[usize],
    bracketing: &Bracketing,
    method: BoundMethod,
    cap: usize,
) -> Result<usize> {
    check_elems(leaves, elems)?;
    bracketing.validate(leaves.len())?;
    let elems = without_loops(leaves, elems);
    match method {
        BoundMethod::Union => Ok(build(leaves, bracketing)?.matroid.rank(&elems)),
        BoundMethod::Exhaustive => {
            if elems.is_empty() {
                return Ok(0);
            }
            let index = exhaustive_index(&elems, leaves[0].ground_size(), cap)?;
            let t = exhaustive_tables(leaves, bracketing, &index, cap)?;
            Ok(*t.last().expect("nonempty table") as usize)
        }
    }
}

/// `(r₁ + … + r_d − (d−1))^MD(F)` with loops removed first.
pub fn conjecture_value(
    leaves: &[RankNode],
    elems: &[usize],
    method: BoundMethod,
    cap: usize,
) -> Result<usize> {
    check_elems(leaves, elems)?;
    let elems = without_loops(leaves, elems);
    let shift = leaves.len() - 1;
    match method {
        BoundMethod::Union => Ok(RankNode::combine(leaves, shift)?.matroid.rank(&elems)),
        BoundMethod::Exhaustive => {
            if elems.is_empty() {
                return Ok(0);
            }
            let index = exhaustive_index(&elems, leaves[0].ground_size(), cap)?;
            let tables: Vec<Vec<i64>> = leaves.iter().map(|l| leaf_table(l, &index)).collect();
            let t = md_table(&tables, shift as i64, &index, leaves[0].ground_size(), cap)?;
            Ok(*t.last().expect("nonempty table") as usize)
        }
    }
}

/// `(r₁ + r₂ − 1)^MD(F)` for matroid rank functions, after deleting the
/// elements of `F` that are loops of either matroid.
pub fn pair_matroid_rank(
    r1: &dyn SetFunction,
    r2: &dyn SetFunction,
    set: Subset,
    cap: usize,
) -> Result<i64> {
    if r1.ground_size() != r2.ground_size() {
        return Err(Error::DimensionMismatch {
            context: "pair ground sets",
            expected: r1.ground_size(),
            found: r2.ground_size(),
        });
    }
    let nonloops = Subset::from_elems(
        set.iter()
            .filter(|&e| r1.eval(Subset::singleton(e)) > 0 && r2.eval(Subset::singleton(e)) > 0),
    );
    let f = FnSetFunction::new(r1.ground_size(), |s: Subset| r1.eval(s) + r2.eval(s) - 1);
    dilworth_matroid_rank(&f, nonloops, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::hadamard::{HadamardInstance, LinearSpaceRep, NumericHadamard};
    use crate::matrix::Matrix;
    use crate::matroids::{graphic_representation, MatroidRank};
    use crate::rng::seeded;
    use crate::setfunc::Cardinality;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn bracketing_parse_and_display() {
        let b: Bracketing = "((1,2),3)".parse().unwrap();
        assert_eq!(b.to_string(), "((1,2),3)");
        assert_eq!(b.leaves(), vec![0, 1, 2]);
        assert_eq!(b, Bracketing::left_comb(&[0, 1, 2]).unwrap());
        assert!(b.validate(3).is_ok() && b.validate(4).is_err());
        assert!(" ( 2 , ( 1 , 3 ) ) ".parse::<Bracketing>().is_ok());
        for bad in ["", "(1,2", "(1;2)", "0", "(1,2))"] {
            assert!(bad.parse::<Bracketing>().is_err(), "{bad}");
        }
        assert!("(1,1)".parse::<Bracketing>().unwrap().validate(2).is_err());
    }

    #[test]
    fn bracketing_counts() {
        // (2d-3)!! unordered binary trees on d labelled leaves
        assert_eq!(all_bracketings(1).len(), 1);
        assert_eq!(all_bracketings(2).len(), 1);
        assert_eq!(all_bracketings(3).len(), 3);
        assert_eq!(all_bracketings(4).len(), 15);
        for b in all_bracketings(4) {
            assert!(b.validate(4).is_ok());
        }
    }

    #[test]
    fn k4_pair_rank() {
        let g = Arc::new(Graph::complete(4));
        let graphic = CountMatroid::new(g.clone(), 1, 1).unwrap();
        let r = MatroidRank::new(graphic.clone()).unwrap();
        assert_eq!(pair_matroid_rank(&r, &r, Subset::full(6), 12).unwrap(), 5);
        assert_eq!(pair_matroid_rank(&r, &r, Subset::EMPTY, 12).unwrap(), 0);
        let leaves = vec![RankNode::count(graphic.clone()), RankNode::count(graphic)];
        let all: Vec<usize> = (0..6).collect();
        let b = Bracketing::left_comb(&[0, 1]).unwrap();
        for method in [BoundMethod::Union, BoundMethod::Exhaustive] {
            assert_eq!(
                nested_upper_bound(&leaves, &all, &b, method, 12).unwrap(),
                5
            );
            assert_eq!(conjecture_value(&leaves, &all, method, 12).unwrap(), 5);
        }
    }

    #[test]
    fn free_second_factor() {
        let f = PrimeField::default();
        let mut rng = seeded(9);
        let y = LinearSpaceRep::new(Matrix::random(f, 6, 2, &mut rng)).unwrap();
        let full = LinearSpaceRep::new(Matrix::identity(f, 6)).unwrap();
        let r1 = y.row_matroid();
        let inst = HadamardInstance::new(vec![y, full]).unwrap();
        let numeric = NumericHadamard::sample(&inst, 3, &mut rng).unwrap();
        for s in Subset::full(6).subsets() {
            let pair = pair_matroid_rank(&r1, &Cardinality(6), s, 12).unwrap();
            assert_eq!(pair as usize, numeric.rank(&s.elems()));
        }
    }

    #[test]
    fn loops_are_removed() {
        let f = PrimeField::default();
        let with_loop = LinearMatroid::new(
            Matrix::from_rows(f, &[vec![1, 0], vec![0, 0], vec![0, 1]]).unwrap(),
        );
        let free = LinearMatroid::new(Matrix::identity(f, 3));
        let r = pair_matroid_rank(&with_loop, &free, Subset::full(3), 12).unwrap();
        assert_eq!(r, 2);
        let leaves = vec![RankNode::linear(with_loop), RankNode::linear(free)];
        assert_eq!(
            conjecture_value(&leaves, &[0, 1, 2], BoundMethod::Union, 12).unwrap(),
            2
        );
    }

    fn random_space(
        f: PrimeField,
        m: usize,
        n: usize,
        rng: &mut crate::rng::Rng,
    ) -> LinearSpaceRep {
        loop {
            // sparse entries make the matroids interesting
            let mat = Matrix::from_fn(f, m, n, |_, _| {
                if rng.random_bool(0.5) {
                    0
                } else {
                    f.random(rng)
                }
            });
            if let Ok(rep) = LinearSpaceRep::new(mat) {
                return rep;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn union_and_exhaustive_agree(m in 1usize..7, d in 2usize..5, seed in any::<u64>()) {
            let f = PrimeField::default();
            let mut rng = seeded(seed);
            let factors: Vec<LinearSpaceRep> = (0..d)
                .map(|_| { let n = rng.random_range(1..=m.min(3)); random_space(f, m, n, &mut rng) })
                .collect();
            let inst = HadamardInstance::new(factors).unwrap();
            let leaves = inst.rank_nodes();
            let numeric = NumericHadamard::sample(&inst, 3, &mut rng).unwrap();
            for s in Subset::full(m).subsets() {
                let elems = s.elems();
                let conj_u = conjecture_value(&leaves, &elems, BoundMethod::Union, 12).unwrap();
                let conj_e = conjecture_value(&leaves, &elems, BoundMethod::Exhaustive, 12).unwrap();
                prop_assert_eq!(conj_u, conj_e);
                let num = numeric.rank(&elems);
                for b in all_bracketings(d) {
                    let u = nested_upper_bound(&leaves, &elems, &b, BoundMethod::Union, 12).unwrap();
                    let e = nested_upper_bound(&leaves, &elems, &b, BoundMethod::Exhaustive, 12).unwrap();
                    prop_assert_eq!(u, e);
                    prop_assert!(num <= u);
                }
            }
        }
    }

    #[test]
    fn graphic_representation_nodes_match_count_nodes() {
        let f = PrimeField::default();
        let g = Arc::new(Graph::complete(4));
        let lin = RankNode::linear(graphic_representation(f, &g, None).unwrap());
        let cnt = RankNode::count(CountMatroid::new(g, 1, 1).unwrap());
        let all: Vec<usize> = (0..6).collect();
        let b = Bracketing::left_comb(&[0, 1, 2]).unwrap();
        let mixed = [lin.clone(), lin.clone(), lin];
        let counts = [cnt.clone(), cnt.clone(), cnt];
        assert_eq!(
            nested_upper_bound(&mixed, &all, &b, BoundMethod::Union, 12).unwrap(),
            nested_upper_bound(&counts, &all, &b, BoundMethod::Union, 12).unwrap()
        );
        assert_eq!(
            conjecture_value(&mixed, &all, BoundMethod::Union, 12).unwrap(),
            conjecture_value(&counts, &all, BoundMethod::Union, 12).unwrap()
        );
    }
}
