//! Singularity recognition: rational double points, class T and Wahl
//! chains, discrepancies, and the minimal resolutions of the TOI families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::contfrac::{hj_expand, ContFracError};
use crate::curvegraph::{DecoratedGraph, Marker, Shape};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularityError {
    #[error("chain entry {0} is below 2")]
    EntryTooSmall(i64),
    #[error("empty chain")]
    EmptyChain,
    #[error("intersection matrix of {0:?} is singular")]
    Singular(Vec<i64>),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("n = {n} is out of range for {family} (need n >= {min})")]
    OutOfRange { family: Family, n: i64, min: i64 },
    #[error(transparent)]
    ContFrac(#[from] ContFracError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicType {
    pub n: u64,
    pub q: u64,
    pub chain: Vec<i64>,
}

impl CyclicType {
    pub fn new(n: u64, q: u64) -> Result<Self, ContFracError> {
        Ok(CyclicType {
            n,
            q,
            chain: hj_expand(n, q)?,
        })
    }

    pub fn from_chain(chain: &[i64]) -> Result<Self, ContFracError> {
        if chain.iter().all(|&b| b >= 2) {
            if let Some((n, q)) = continuant_u64(chain) {
                return Ok(CyclicType {
                    n,
                    q,
                    chain: chain.to_vec(),
                });
            }
        }
        let f = crate::contfrac::HjFraction::from_chain(chain)?;
        Ok(CyclicType {
            n: f.n,
            q: f.q,
            chain: f.expansion,
        })
    }
}

impl fmt::Display for CyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.n, self.q)
    }
}

/// Class T singularity `1/(d n^2)(1, d n a - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassTParams {
    pub d: u64,
    pub n: u64,
    pub a: u64,
}

impl ClassTParams {
    pub fn is_wahl(&self) -> bool {
        self.d == 1
    }

    /// `(d n^2, d n a - 1)`.
    pub fn cyclic(&self) -> (u64, u64) {
        (self.d * self.n * self.n, self.d * self.n * self.a - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeLabel {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(k) => write!(f, "A{k}"),
            AdeLabel::D(k) => write!(f, "D{k}"),
            AdeLabel::E6 => f.write_str("E6"),
            AdeLabel::E7 => f.write_str("E7"),
            AdeLabel::E8 => f.write_str("E8"),
        }
    }
}

impl AdeLabel {
    pub fn vertex_count(&self) -> usize {
        match *self {
            AdeLabel::A(k) | AdeLabel::D(k) => k,
            AdeLabel::E6 => 6,
            AdeLabel::E7 => 7,
            AdeLabel::E8 => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    Rdp(AdeLabel),
    ClassT(ClassTParams),
    Smooth,
    Other(OtherSingularity),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OtherSingularity {
    Cyclic(CyclicType),
    /// Non-chain support that is not ADE; the weights in component order.
    Graph(Vec<i64>),
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityKind::Rdp(l) => write!(f, "{l}"),
            SingularityKind::ClassT(t) => write!(f, "T({},{},{})", t.d, t.n, t.a),
            SingularityKind::Smooth => f.write_str("smooth"),
            SingularityKind::Other(OtherSingularity::Cyclic(c)) => write!(f, "other{c}"),
            SingularityKind::Other(OtherSingularity::Graph(w)) => write!(f, "other{w:?}"),
        }
    }
}

/// `(N, Q)` with `chain = N/Q`, via continuants; `None` on overflow.
fn continuant_u128(chain: &[i64]) -> Option<(u128, u128)> {
    let (mut n, mut q) = (1u128, 0u128);
    for &b in chain.iter().rev() {
        let nn = (b as u128).checked_mul(n)?.checked_sub(q)?;
        q = n;
        n = nn;
    }
    Some((n, q))
}

fn continuant_u64(chain: &[i64]) -> Option<(u64, u64)> {
    let (mut n, mut q) = (1u64, 0u64);
    for &b in chain.iter().rev() {
        let nn = (b as u64).checked_mul(n)?.checked_sub(q)?;
        q = n;
        n = nn;
    }
    Some((n, q))
}

fn continuant_big(chain: &[i64]) -> (BigInt, BigInt) {
    let (mut n, mut q) = (BigInt::one(), BigInt::zero());
    for &b in chain.iter().rev() {
        let nn = BigInt::from(b) * &n - &q;
        q = n;
        n = nn;
    }
    (n, q)
}

/// Class T test on `N/Q`: `N = d n^2`, `Q = d n a - 1`. Since `d n` divides
/// both `N` and `Q + 1`, it is enough to scan divisors `k` of `gcd(N, Q+1)`.
fn class_t_of<T>(big_n: T, big_q: T) -> Option<(T, T, T)>
where
    T: Integer + Clone + Roots,
{
    let one = T::one();
    let g = big_n.gcd(&(big_q.clone() + one.clone()));
    let root = g.sqrt();
    let mut k = one.clone();
    let mut best: Option<(T, T, T)> = None;
    let mut try_k = |k: &T| {
        // k = d n, n = N / k, d = k / n
        if !(big_n.clone() % k.clone()).is_zero() {
            return;
        }
        let n = big_n.clone() / k.clone();
        if n < one.clone() + one.clone() || !(k.clone() % n.clone()).is_zero() {
            return;
        }
        let d = k.clone() / n.clone();
        let a = (big_q.clone() + one.clone()) / k.clone();
        if a > T::zero() && a < n && a.gcd(&n) == one {
            let cand = (d, n, a);
            if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                best = Some(cand);
            }
        }
    };
    while k <= root {
        if (g.clone() % k.clone()).is_zero() {
            try_k(&k);
            let other = g.clone() / k.clone();
            try_k(&other);
        }
        k = k + one.clone();
    }
    best
}

fn check_chain(chain: &[i64]) -> Result<(), SingularityError> {
    if chain.is_empty() {
        return Err(SingularityError::EmptyChain);
    }
    if let Some(&b) = chain.iter().find(|&&b| b < 2) {
        return Err(SingularityError::EntryTooSmall(b));
    }
    Ok(())
}

/// Class T parameters of a chain, if any.
pub fn class_t_params(chain: &[i64]) -> Result<Option<ClassTParams>, SingularityError> {
    check_chain(chain)?;
    if let Some((n, q)) = continuant_u64(chain) {
        return Ok(class_t_of(n, q).map(|(d, n, a)| ClassTParams { d, n, a }));
    }
    if let Some((n, q)) = continuant_u128(chain) {
        return Ok(class_t_of(n, q).map(|(d, n, a)| ClassTParams {
            d: d as u64,
            n: n as u64,
            a: a as u64,
        }));
    }
    let (n, q) = continuant_big(chain);
    Ok(class_t_of(n, q).map(|(d, n, a)| ClassTParams {
        d: d.to_u64().expect("d fits"),
        n: n.to_u64().expect("n fits"),
        a: a.to_u64().expect("a fits"),
    }))
}

pub fn classify_chain(chain: &[i64]) -> Result<SingularityKind, SingularityError> {
    check_chain(chain)?;
    if chain.iter().all(|&b| b == 2) {
        return Ok(SingularityKind::Rdp(AdeLabel::A(chain.len())));
    }
    if let Some(t) = class_t_params(chain)? {
        return Ok(SingularityKind::ClassT(t));
    }
    Ok(SingularityKind::Other(OtherSingularity::Cyclic(
        CyclicType::from_chain(chain)?,
    )))
}

/// ADE type of a connected all-(-2) tree with simple edges.
pub fn is_rdp_graph(g: &DecoratedGraph) -> Option<AdeLabel> {
    if g.is_empty() || g.curves().any(|(_, c)| c.self_int != -2) {
        return None;
    }
    if g.ids().any(|v| g.loops(v) > 0) || g.edges().iter().any(|e| e.2 != 1) {
        return None;
    }
    let comps = g.components_where(|_, _| true);
    if comps.len() != 1 {
        return None;
    }
    match comps[0].shape {
        Shape::Chain => Some(AdeLabel::A(g.len())),
        Shape::Other => None,
        Shape::Star => {
            let center = g.ids().find(|v| g.degree(v) >= 3)?;
            if g.degree(center) != 3 {
                return None;
            }
            let mut lens: Vec<usize> = g
                .neighbors(center)
                .map(|(y, _)| {
                    let (mut prev, mut x, mut len) = (center.to_string(), y.to_string(), 1);
                    loop {
                        let next: Vec<String> = g
                            .neighbors(&x)
                            .map(|(z, _)| z.to_string())
                            .filter(|z| *z != prev)
                            .collect();
                        match next.as_slice() {
                            [z] => {
                                prev = std::mem::replace(&mut x, z.clone());
                                len += 1;
                            }
                            _ => break,
                        }
                    }
                    len
                })
                .collect();
            lens.sort();
            match lens[..] {
                [1, 1, k] => Some(AdeLabel::D(k + 3)),
                [1, 2, 2] => Some(AdeLabel::E6),
                [1, 2, 3] => Some(AdeLabel::E7),
                [1, 2, 4] => Some(AdeLabel::E8),
                _ => None,
            }
        }
    }
}

/// Coefficients `c_j` with `sum_j c_j E_j.E_i = b_i - 2`.
pub fn discrepancies(chain: &[i64]) -> Result<Vec<BigRational>, SingularityError> {
    check_chain(chain)?;
    let r = chain.len();
    let m: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j {
                        -chain[i]
                    } else if i.abs_diff(j) == 1 {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let rhs: Vec<_> = chain.iter().map(|&b| linalg::q(b - 2)).collect();
    linalg::solve(&m, &rhs).ok_or_else(|| SingularityError::Singular(chain.to_vec()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T1,
    T3,
    T5,
    O1,
    O5,
    O7,
    O11,
    I1,
    I7,
    I11,
    I13,
    I17,
    I19,
    I23,
    I29,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchType {
    Dihedral,
    /// Middle arm is a single (-3)-curve.
    ThreeOne,
    /// Middle arm is two (-2)-curves.
    ThreeTwo,
}

impl fmt::Display for BranchType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchType::Dihedral => "dihedral",
            BranchType::ThreeOne => "(3,1)",
            BranchType::ThreeTwo => "(3,2)",
        })
    }
}

struct FamilyData {
    family: Family,
    alias: &'static str,
    // middle, top, bottom
    arms: [&'static [i64]; 3],
    offset: i64,
}

const FAMILIES: [FamilyData; 15] = [
    FamilyData {
        family: Family::T1,
        alias: "T6k+1",
        arms: [&[2, 2], &[2], &[2, 2]],
        offset: 0,
    },
    FamilyData {
        family: Family::T3,
        alias: "T6k+3",
        arms: [&[2, 2], &[2], &[3]],
        offset: 1,
    },
    FamilyData {
        family: Family::T5,
        alias: "T6k+5",
        arms: [&[3], &[2], &[3]],
        offset: 2,
    },
    FamilyData {
        family: Family::O1,
        alias: "O12k+1",
        arms: [&[2, 2], &[2], &[2, 2, 2]],
        offset: 0,
    },
    FamilyData {
        family: Family::O5,
        alias: "O12k+5",
        arms: [&[3], &[2], &[2, 2, 2]],
        offset: 1,
    },
    FamilyData {
        family: Family::O7,
        alias: "O12k+7",
        arms: [&[2, 2], &[2], &[4]],
        offset: 2,
    },
    FamilyData {
        family: Family::O11,
        alias: "O12k+11",
        arms: [&[3], &[2], &[4]],
        offset: 3,
    },
    FamilyData {
        family: Family::I1,
        alias: "I30k+1",
        arms: [&[2, 2], &[2], &[2, 2, 2, 2]],
        offset: 0,
    },
    FamilyData {
        family: Family::I7,
        alias: "I30k+7",
        arms: [&[2, 2], &[2], &[2, 3]],
        offset: 1,
    },
    FamilyData {
        family: Family::I11,
        alias: "I30k+11",
        arms: [&[3], &[2], &[2, 2, 2, 2]],
        offset: 1,
    },
    FamilyData {
        family: Family::I13,
        alias: "I30k+13",
        arms: [&[2, 2], &[2], &[3, 2]],
        offset: 1,
    },
    FamilyData {
        family: Family::I17,
        alias: "I30k+17",
        arms: [&[3], &[2], &[2, 3]],
        offset: 2,
    },
    FamilyData {
        family: Family::I19,
        alias: "I30k+19",
        arms: [&[2, 2], &[2], &[5]],
        offset: 3,
    },
    FamilyData {
        family: Family::I23,
        alias: "I30k+23",
        arms: [&[3], &[2], &[3, 2]],
        offset: 2,
    },
    FamilyData {
        family: Family::I29,
        alias: "I30k+29",
        arms: [&[3], &[2], &[5]],
        offset: 4,
    },
];

impl Family {
    pub const MIN_N: i64 = 2;

    pub fn all() -> impl Iterator<Item = Family> {
        FAMILIES.iter().map(|d| d.family)
    }

    fn data(self) -> &'static FamilyData {
        FAMILIES.iter().find(|d| d.family == self).unwrap()
    }

    pub fn alias(self) -> &'static str {
        self.data().alias
    }

    /// Arm chains listed from the center outwards: middle, top, bottom.
    pub fn arms(self) -> [&'static [i64]; 3] {
        self.data().arms
    }

    /// Shift between the central weight `n` and the column index of the
    /// P-resolution count table.
    pub fn table_offset(self) -> i64 {
        self.data().offset
    }

    pub fn branch_type(self) -> BranchType {
        if self.arms()[0] == [3] {
            BranchType::ThreeOne
        } else {
            BranchType::ThreeTwo
        }
    }

    /// Mnemonic form used in the printed tables, e.g. `T6(n-4)+5`.
    pub fn pretty(self) -> String {
        let a = self.alias();
        let (head, tail) = a.split_once("k+").unwrap();
        format!("{head}(n-{})+{tail}", self.table_offset() + 2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.alias())
    }
}

impl FromStr for Family {
    type Err = SingularityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim();
        FAMILIES
            .iter()
            .find(|d| {
                d.alias.eq_ignore_ascii_case(norm)
                    || format!("{:?}", d.family).eq_ignore_ascii_case(norm)
            })
            .map(|d| d.family)
            .ok_or_else(|| SingularityError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToiDescriptor {
    pub family: Family,
    /// Central weight: the central curve has self-intersection `-n`.
    pub n: i64,
    pub branch_type: BranchType,
    /// Middle, top, bottom.
    pub arms: [CyclicType; 3],
}

impl ToiDescriptor {
    pub fn new(family: Family, n: i64) -> Result<Self, SingularityError> {
        if n < Family::MIN_N {
            return Err(SingularityError::OutOfRange {
                family,
                n,
                min: Family::MIN_N,
            });
        }
        let arms = family
            .arms()
            .map(|a| CyclicType::from_chain(a).expect("family arm is a valid chain"));
        Ok(ToiDescriptor {
            family,
            n,
            branch_type: family.branch_type(),
            arms,
        })
    }

    pub fn central(&self) -> i64 {
        self.n
    }
}

impl fmt::Display for ToiDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.n)
    }
}

pub const ARM_PREFIX: [&str; 3] = ["m", "t", "b"];

/// Star graph: center `c` of weight `-n`, arms `m1..`, `t1..`, `b1..`.
pub fn toi_minimal_resolution(
    family: Family,
    n: i64,
) -> Result<(DecoratedGraph, ToiDescriptor), SingularityError> {
    let desc = ToiDescriptor::new(family, n)?;
    let mut g = DecoratedGraph::new();
    g.add_curve("c", -n, Marker::Kept).unwrap();
    for (pre, arm) in ARM_PREFIX.iter().zip(family.arms()) {
        let mut prev = "c".to_string();
        for (j, &b) in arm.iter().enumerate() {
            let v = format!("{pre}{}", j + 1);
            g.add_curve(&v, -b, Marker::Kept).unwrap();
            g.add_edge(&prev, &v, 1).unwrap();
            prev = v;
        }
    }
    Ok((g, desc))
}
