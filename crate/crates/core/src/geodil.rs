//! Generic sections of subspace families and the Dilworth truncation they realize.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{Matrix, MatrixJson};
use crate::setfunc::{DilworthTable, FnSetFunction, SetFunction, Subset};
use crate::subspace::Subspace;

pub const SECTION_ATTEMPTS: usize = 3;

/// Subspaces `A_e ⊆ GF(p)^n`, one per element `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    field: PrimeField,
    ambient: usize,
    members: Vec<Subspace>,
}

/// `{"ambient": n, "members": [matrix, ...]}`, each matrix `n × k` with spanning columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub ambient: usize,
    pub members: Vec<MatrixJson>,
}

impl SubspaceFamily {
    /// Every member must be nonzero and live in `GF(p)^ambient`.
    pub fn new(field: PrimeField, ambient: usize, members: Vec<Subspace>) -> Result<Self> {
        for (e, a) in members.iter().enumerate() {
            if a.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch {
                    context: "family member ambient dimension",
                    expected: ambient,
                    found: a.ambient_dim(),
                });
            }
            if a.dim() == 0 {
                return Err(Error::InvalidParameter(format!(
                    "family member {e} is the zero subspace"
                )));
            }
        }
        if members.len() > crate::setfunc::MAX_GROUND {
            return Err(Error::GroundSetTooLarge(members.len()));
        }
        Ok(SubspaceFamily {
            field,
            ambient,
            members,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `dim⟨A_e : e ∈ F⟩`.
    pub fn span_dim(&self, set: Subset) -> usize {
        let chosen: Vec<&Subspace> = set.iter().map(|e| &self.members[e]).collect();
        Subspace::sum_dim(&chosen)
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            ambient: self.ambient,
            members: self.members.iter().map(|a| a.basis().to_json()).collect(),
        }
    }

    pub fn from_json(field: PrimeField, json: &FamilyJson) -> Result<Self> {
        let members = json
            .members
            .iter()
            .enumerate()
            .map(|(e, m)| {
                if m.rows != json.ambient {
                    return Err(Error::Input(format!(
                        "members[{e}]: {} rows but ambient is {}",
                        m.rows, json.ambient
                    )));
                }
                Ok(Subspace::span(&Matrix::from_json(field, m)?))
            })
            .collect::<Result<Vec<_>>>()?;
        SubspaceFamily::new(field, json.ambient, members)
    }
}

impl SetFunction for SubspaceFamily {
    fn ground_size(&self) -> usize {
        self.members.len()
    }

    fn eval(&self, set: Subset) -> i64 {
        self.span_dim(set) as i64
    }
}

/// A family cut by a random subspace `H`.
#[derive(Clone, Debug)]
pub struct Section {
    pub hyperplane: Subspace,
    pub family: SubspaceFamily,
    pub attempts: usize,
}

/// `{A_e ∩ H}` for a random `H` of codimension `k` meeting every member
/// transversally, resampled up to three times.
pub fn sample_section<R: Rng + ?Sized>(
    fam: &SubspaceFamily,
    k: usize,
    rng: &mut R,
) -> Result<Section> {
    if let Some((e, a)) = fam.members.iter().enumerate().find(|(_, a)| a.dim() < k) {
        return Err(Error::InvalidParameter(format!(
            "member {e} has dimension {} below the codimension {k}",
            a.dim()
        )));
    }
    let mut offender = 0;
    for attempt in 1..=SECTION_ATTEMPTS {
        let h = Subspace::random_of_codim(fam.field, fam.ambient, k, rng)?;
        let cut = fam
            .members
            .iter()
            .map(|a| a.intersect(&h))
            .collect::<Result<Vec<_>>>()?;
        match cut
            .iter()
            .zip(&fam.members)
            .position(|(c, a)| c.dim() + k != a.dim())
        {
            Some(e) => offender = e,
            None => {
                return Ok(Section {
                    hyperplane: h,
                    family: SubspaceFamily {
                        field: fam.field,
                        ambient: fam.ambient,
                        members: cut,
                    },
                    attempts: attempt,
                })
            }
        }
    }
    Err(Error::TransversalityFailure {
        element: offender,
        attempts: SECTION_ATTEMPTS,
    })
}

pub fn random_section<R: Rng + ?Sized>(
    fam: &SubspaceFamily,
    k: usize,
    rng: &mut R,
) -> Result<SubspaceFamily> {
    sample_section(fam, k, rng).map(|s| s.family)
}

/// `k` successive codimension-one sections.
pub fn iterated_section<R: Rng + ?Sized>(
    fam: &SubspaceFamily,
    k: usize,
    rng: &mut R,
) -> Result<SubspaceFamily> {
    let mut cur = fam.clone();
    for _ in 0..k {
        cur = random_section(&cur, 1, rng)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCheck {
    pub set: Vec<usize>,
    pub section_dim: i64,
    pub formula: i64,
    pub partition: Vec<Vec<usize>>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub codim: usize,
    /// Random sections drawn; a second one is drawn only after a mismatch.
    pub draws: usize,
    pub checks: Vec<SectionCheck>,
    pub pass: bool,
}

/// Compares `dim⟨A_e ∩ H : e ∈ F⟩` with `(f − k)^D(F)` for every nonempty `F`,
/// where `f(F) = dim⟨A_e : e ∈ F⟩`.
pub fn verify_section_dilworth<R: Rng + ?Sized>(
    fam: &SubspaceFamily,
    k: usize,
    rng: &mut R,
    cap: usize,
) -> Result<SectionReport> {
    let m = fam.len();
    let full = Subset::full(m);
    let shifted = FnSetFunction::new(m, |s: Subset| fam.eval(s) - k as i64);
    let table = DilworthTable::truncation(&shifted, full, cap)?;
    let mut report = None;
    for draw in 1..=2 {
        let section = random_section(fam, k, rng)?;
        let checks: Vec<SectionCheck> = full
            .subsets()
            .filter(|s| !s.is_empty())
            .map(|s| {
                let section_dim = section.eval(s);
                let formula = table.get(s).expect("subset of the tabulated set");
                let partition = table
                    .witness(s)
                    .expect("subset of the tabulated set")
                    .blocks()
                    .iter()
                    .map(|b| b.elems())
                    .collect();
                SectionCheck {
                    set: s.elems(),
                    section_dim,
                    formula,
                    partition,
                    pass: section_dim == formula,
                }
            })
            .collect();
        let pass = checks.iter().all(|c| c.pass);
        report = Some(SectionReport {
            codim: k,
            draws: draw,
            checks,
            pass,
        });
        if pass {
            break;
        }
    }
    Ok(report.expect("at least one draw"))
}

/// Whether `⟨F′⟩ ∩ ⟨F″⟩ ≠ 0` for every bipartition `{F′, F″}` of the family.
pub fn is_connected_family(fam: &SubspaceFamily, cap: usize) -> Result<bool> {
    let m = fam.len();
    if m > cap {
        return Err(Error::CapExceeded { size: m, cap });
    }
    if m <= 1 {
        return Ok(true);
    }
    let full = Subset::full(m);
    let total = fam.span_dim(full);
    let rest = full.without(0);
    Ok(rest.subsets().filter(|s| *s != rest).all(|s| {
        let first = s.with(0);
        fam.span_dim(first) + fam.span_dim(full.difference(first)) > total
    }))
}

/// `A_e = ⟨(y₁,e, 0), (0, y₂,e)⟩` in `GF(p)^{n₁+n₂}`, where `yᵢ,e` is row `e` of `Yᵢ`.
pub fn hadamard_pair_family(y1: &Matrix, y2: &Matrix) -> Result<SubspaceFamily> {
    if y1.rows() != y2.rows() {
        return Err(Error::DimensionMismatch {
            context: "rows of the second factor",
            expected: y1.rows(),
            found: y2.rows(),
        });
    }
    let f = *y1.field();
    let (n1, n2) = (y1.cols(), y2.cols());
    let members = (0..y1.rows())
        .map(|e| {
            let mut a = vec![0; n1 + n2];
            a[..n1].copy_from_slice(y1.row(e));
            let mut b = vec![0; n1 + n2];
            b[n1..].copy_from_slice(y2.row(e));
            Subspace::span_of(f, n1 + n2, &[a, b])
        })
        .collect::<Result<Vec<_>>>()?;
    SubspaceFamily::new(f, n1 + n2, members)
}
