//! Finite commutative quantales as thin symmetric monoidal closed categories.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::category::{Category, Enumerable};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::limits::{factor_brute, limit_brute, verify_exhaustive, Cone, Limits};
use crate::smcc::{LawCases, LawSource, LawSuiteOptions, Smcc};
use crate::transcript::{source, Transcript};

use super::SizeCaps;

/// An element, by its position in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct El(pub usize);

/// The unique arrow `lo → hi`, which exists iff `lo ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Le {
    lo: El,
    hi: El,
}

impl Le {
    pub fn lo(&self) -> El {
        self.lo
    }

    pub fn hi(&self) -> El {
        self.hi
    }
}

/// The `quantale` JSON document body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuantale {
    pub elements: Vec<String>,
    /// Generating pairs `[a, b]` meaning `a ≤ b`; closed reflexively and transitively.
    pub leq: Vec<[String; 2]>,
    /// Row-major: `tensor[i][j]` names `elements[i] ⊗ elements[j]`.
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

/// A finite lattice: order, binary meets and joins.
#[derive(Debug, Clone)]
pub(crate) struct Lattice {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub top: usize,
    pub bottom: usize,
}

impl Lattice {
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotALattice("there are no elements".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq[a][b] && leq[b][a] {
                    return Err(Error::NotALattice(format!(
                        "`{}` and `{}` are distinct but each is below the other",
                        names[a], names[b]
                    )));
                }
            }
        }
        let bound = |below: bool, a: usize, b: usize| -> Option<usize> {
            // Greatest lower bound (below) or least upper bound of a and b.
            let rel = |x: usize, y: usize| if below { leq[x][y] } else { leq[y][x] };
            let bounds: Vec<usize> = (0..n).filter(|&c| rel(c, a) && rel(c, b)).collect();
            bounds.iter().copied().find(|&c| bounds.iter().all(|&d| rel(d, c)))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(true, a, b).ok_or_else(|| {
                    Error::NotALattice(format!("`{}` and `{}` have no meet", names[a], names[b]))
                })?;
                join[a][b] = bound(false, a, b).ok_or_else(|| {
                    Error::NotALattice(format!("`{}` and `{}` have no join", names[a], names[b]))
                })?;
            }
        }
        let top = (0..n).fold(0, |acc, x| join[acc][x]);
        let bottom = (0..n).fold(0, |acc, x| meet[acc][x]);
        Ok(Lattice { names, leq, meet, join, top, bottom })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
}

/// A validated finite commutative quantale.
///
/// As a category it has one arrow `a → b` exactly when `a ≤ b`; the tensor is
/// the monoidal product and `x ⇒ z = max{y : x⊗y ≤ z}` the internal hom.
#[derive(Debug, Clone)]
pub struct Quantale {
    lat: Lattice,
    index: HashMap<String, usize>,
    tensor: Vec<Vec<usize>>,
    unit: usize,
    residual: Vec<Vec<usize>>,
}

impl Quantale {
    pub fn from_raw(raw: &RawQuantale, caps: &SizeCaps) -> Result<Self> {
        let (lat, tensor, unit) = Self::parse(raw, caps)?;
        Self::assemble(lat, tensor, unit, true)
    }

    /// Validates the order but accepts any tensor table, computing residuals on
    /// a best-effort basis. Meant for exercising the law suite on broken data.
    pub fn with_unchecked_tensor(raw: &RawQuantale) -> Result<Self> {
        let caps = SizeCaps { quantale: usize::MAX, ..SizeCaps::default() };
        let (lat, tensor, unit) = Self::parse(raw, &caps)?;
        Self::assemble(lat, tensor, unit, false)
    }

    fn parse(raw: &RawQuantale, caps: &SizeCaps) -> Result<(Lattice, Vec<Vec<usize>>, usize)> {
        let n = raw.elements.len();
        if n > caps.quantale {
            return Err(Error::InvalidQuantale(format!(
                "{n} elements exceed the cap of {}",
                caps.quantale
            )));
        }
        let mut index = HashMap::new();
        for (i, e) in raw.elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("element `{e}` is listed twice")));
            }
        }
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("unknown element `{s}`")))
        };
        let pairs = raw
            .leq
            .iter()
            .map(|[a, b]| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        if raw.tensor.len() != n || raw.tensor.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("tensor table must be {n}×{n}")));
        }
        let tensor = raw
            .tensor
            .iter()
            .map(|row| row.iter().map(|s| look(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = look(&raw.unit)?;
        let lat = Lattice::new(raw.elements.clone(), &pairs)?;
        Ok((lat, tensor, unit))
    }

    pub(crate) fn assemble(
        lat: Lattice,
        tensor: Vec<Vec<usize>>,
        unit: usize,
        checked: bool,
    ) -> Result<Self> {
        let n = lat.len();
        let nm = |i: usize| lat.names[i].as_str();
        if checked {
            for a in 0..n {
                for b in 0..n {
                    if !lat.leq[a][b] {
                        continue;
                    }
                    for c in 0..n {
                        if !lat.leq[tensor[a][c]][tensor[b][c]] || !lat.leq[tensor[c][a]][tensor[c][b]] {
                            return Err(Error::TensorNotMonotone(format!(
                                "`{}` ≤ `{}` but tensoring with `{}` breaks the order",
                                nm(a),
                                nm(b),
                                nm(c)
                            )));
                        }
                    }
                }
            }
            for a in 0..n {
                if tensor[unit][a] != a || tensor[a][unit] != a {
                    return Err(Error::InvalidQuantale(format!(
                        "`{}` is not a unit for `{}`",
                        nm(unit),
                        nm(a)
                    )));
                }
                for b in 0..n {
                    if tensor[a][b] != tensor[b][a] {
                        return Err(Error::InvalidQuantale(format!(
                            "tensor is not commutative at (`{}`, `{}`)",
                            nm(a),
                            nm(b)
                        )));
                    }
                    for c in 0..n {
                        if tensor[a][tensor[b][c]] != tensor[tensor[a][b]][c] {
                            return Err(Error::InvalidQuantale(format!(
                                "tensor is not associative at (`{}`, `{}`, `{}`)",
                                nm(a),
                                nm(b),
                                nm(c)
                            )));
                        }
                    }
                }
            }
        }
        let mut residual = vec![vec![lat.bottom; n]; n];
        for x in 0..n {
            for z in 0..n {
                let below: Vec<usize> = (0..n).filter(|&y| lat.leq[tensor[x][y]][z]).collect();
                let cand = below.iter().fold(lat.bottom, |acc, &y| lat.join[acc][y]);
                if below.contains(&cand) {
                    residual[x][z] = cand;
                } else if checked {
                    return Err(Error::NoResiduation(format!(
                        "{{y : `{}` ⊗ y ≤ `{}`}} has no greatest element",
                        nm(x),
                        nm(z)
                    )));
                }
            }
        }
        let index = lat.names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Quantale { lat, index, tensor, unit, residual })
    }

    pub fn to_raw(&self) -> RawQuantale {
        let n = self.len();
        let nm = |i: usize| self.lat.names[i].clone();
        RawQuantale {
            elements: self.lat.names.clone(),
            leq: (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && self.lat.leq[a][b])
                .map(|(a, b)| [nm(a), nm(b)])
                .collect(),
            tensor: self.tensor.iter().map(|r| r.iter().map(|&i| nm(i)).collect()).collect(),
            unit: nm(self.unit),
        }
    }

    pub fn len(&self) -> usize {
        self.lat.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> Vec<El> {
        (0..self.len()).map(El).collect()
    }

    pub fn name(&self, x: El) -> &str {
        &self.lat.names[x.0]
    }

    pub fn element(&self, name: &str) -> Option<El> {
        self.index.get(name).copied().map(El)
    }

    pub fn leq(&self, a: El, b: El) -> bool {
        self.lat.leq[a.0][b.0]
    }

    /// The arrow `a → b`, if `a ≤ b`.
    pub fn le(&self, a: El, b: El) -> Result<Le> {
        if self.leq(a, b) {
            Ok(Le { lo: a, hi: b })
        } else {
            Err(Error::mismatch(format!("`{}` ≰ `{}`", self.name(a), self.name(b))))
        }
    }

    pub fn meet(&self, a: El, b: El) -> El {
        El(self.lat.meet[a.0][b.0])
    }

    pub fn join(&self, a: El, b: El) -> El {
        El(self.lat.join[a.0][b.0])
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = El>) -> El {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = El>) -> El {
        xs.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn top(&self) -> El {
        El(self.lat.top)
    }

    pub fn bottom(&self) -> El {
        El(self.lat.bottom)
    }

    pub fn unit_el(&self) -> El {
        El(self.unit)
    }

    pub fn mul(&self, a: El, b: El) -> El {
        El(self.tensor[a.0][b.0])
    }

    /// `x ⇒ z`.
    pub fn residual(&self, x: El, z: El) -> El {
        El(self.residual[x.0][z.0])
    }

    /// Whether `⊗` is the lattice meet and the unit is the top: a Heyting algebra.
    pub fn is_heyting(&self) -> bool {
        self.unit == self.lat.top && self.tensor == self.lat.meet
    }
}

impl Category for Quantale {
    type Obj = El;
    type Arr = Le;

    fn src(&self, f: &Le) -> El {
        f.lo
    }

    fn tgt(&self, f: &Le) -> El {
        f.hi
    }

    fn identity(&self, x: &El) -> Le {
        Le { lo: *x, hi: *x }
    }

    fn compose(&self, g: &Le, f: &Le) -> Result<Le> {
        if f.hi != g.lo {
            return Err(Error::mismatch(format!(
                "cannot compose `{}` after `{}`",
                self.arr_label(g),
                self.arr_label(f)
            )));
        }
        self.le(f.lo, g.hi)
    }

    fn inverse(&self, f: &Le) -> Option<Le> {
        (f.lo == f.hi).then_some(*f)
    }

    fn obj_label(&self, x: &El) -> String {
        self.name(*x).to_string()
    }

    fn arr_label(&self, f: &Le) -> String {
        format!("{}<={}", self.name(f.lo), self.name(f.hi))
    }
}

impl Enumerable for Quantale {
    fn objects(&self) -> Vec<El> {
        self.elements()
    }

    fn hom(&self, x: &El, y: &El) -> Vec<Le> {
        self.le(*x, *y).into_iter().collect()
    }
}

impl Limits for Quantale {
    fn limit(&self, d: &Diagram<Self>) -> Result<Cone<Self>> {
        limit_brute(self, d)
    }

    fn factor(&self, d: &Diagram<Self>, limit: &Cone<Self>, cone: &Cone<Self>) -> Result<Le> {
        factor_brute(self, d, limit, cone)
    }

    fn verify_limit(&self, d: &Diagram<Self>, cone: &Cone<Self>) -> Transcript {
        verify_exhaustive(self, d, cone)
    }
}

impl Smcc for Quantale {
    fn unit(&self) -> El {
        self.unit_el()
    }

    fn tensor(&self, x: &El, y: &El) -> Result<El> {
        Ok(self.mul(*x, *y))
    }

    fn tensor_arrows(&self, f: &Le, g: &Le) -> Result<Le> {
        self.le(self.mul(f.lo, g.lo), self.mul(f.hi, g.hi))
    }

    fn associator(&self, x: &El, y: &El, z: &El) -> Result<Le> {
        self.le(self.mul(*x, self.mul(*y, *z)), self.mul(self.mul(*x, *y), *z))
    }

    fn right_unitor(&self, x: &El) -> Result<Le> {
        self.le(self.mul(*x, self.unit_el()), *x)
    }

    fn left_unitor(&self, x: &El) -> Result<Le> {
        self.le(self.mul(self.unit_el(), *x), *x)
    }

    fn symmetry(&self, x: &El, y: &El) -> Result<Le> {
        self.le(self.mul(*x, *y), self.mul(*y, *x))
    }

    fn exponential(&self, y: &El, z: &El) -> Result<El> {
        Ok(self.residual(*y, *z))
    }

    fn curry(&self, x: &El, y: &El, f: &Le) -> Result<Le> {
        if f.lo != self.mul(*x, *y) {
            return Err(Error::mismatch(format!(
                "`{}` does not start at `{}` ⊗ `{}`",
                self.arr_label(f),
                self.name(*x),
                self.name(*y)
            )));
        }
        self.le(*x, self.residual(*y, f.hi))
    }

    fn eval(&self, y: &El, z: &El) -> Result<Le> {
        self.le(self.mul(self.residual(*y, *z), *y), *z)
    }
}

impl LawSource for Quantale {
    fn law_cases(&self, opts: &LawSuiteOptions) -> Result<LawCases<El, Le>> {
        crate::smcc::exhaustive_cases(self, opts.extended)
    }

    /// Recomputes residuals by scanning, checks the adjunction on every triple,
    /// and records that hom-sets have at most one element.
    fn extra_laws(&self, t: &mut Transcript) {
        let els = self.elements();
        for &x in &els {
            for &z in &els {
                let below: Vec<El> = els.iter().copied().filter(|&y| self.leq(self.mul(x, y), z)).collect();
                let max = below.iter().copied().find(|&m| below.iter().all(|&y| self.leq(y, m)));
                t.record("residuation.greatest", source::MONOIDAL_CLOSED, max == Some(self.residual(x, z)), || {
                    format!("{} ⇒ {}", self.name(x), self.name(z))
                });
                for &y in &els {
                    let lhs = self.leq(self.mul(x, y), z);
                    let rhs = self.leq(y, self.residual(x, z));
                    t.record("residuation.adjunction", source::MONOIDAL_CLOSED, lhs == rhs, || {
                        format!("x = {}, y = {}, z = {}", self.name(x), self.name(y), self.name(z))
                    });
                }
            }
            for &y in &els {
                t.record("hom.thin", source::PLUMBING, self.hom(&x, &y).len() <= 1, || {
                    format!("{} → {}", self.name(x), self.name(y))
                });
            }
        }
    }
}
