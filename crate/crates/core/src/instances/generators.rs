//! Families of finite commutative quantales.

use crate::error::{Error, Result};

use super::quantale::{Lattice, Quantale};

fn invalid(what: &str, e: Error) -> Error {
    Error::InvalidInput(format!("{what}: {e}"))
}

/// The Heyting algebra on a finite distributive lattice: `⊗ = ∧`, unit the top.
pub fn heyting_from_poset(elements: &[String], leq: &[(String, String)]) -> Result<Quantale> {
    let pos = |s: &String| {
        elements
            .iter()
            .position(|e| e == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown element `{s}`")))
    };
    let pairs = leq
        .iter()
        .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let lat = Lattice::new(elements.to_vec(), &pairs).map_err(|e| invalid("not a lattice", e))?;
    let tensor = lat.meet.clone();
    let top = lat.top;
    Quantale::assemble(lat, tensor, top, true).map_err(|e| invalid("not distributive", e))
}

/// The Heyting chain `0 < 1 < … < n-1`.
pub fn heyting_chain(n: usize) -> Result<Quantale> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let leq: Vec<(String, String)> = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    heyting_from_poset(&names, &leq)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `k/n` in lowest terms, with `0` and `1` written plainly.
fn fraction(k: usize, n: usize) -> String {
    if k == 0 {
        return "0".into();
    }
    let g = gcd(k, n);
    if k == n {
        "1".into()
    } else {
        format!("{}/{}", k / g, n / g)
    }
}

/// The Łukasiewicz chain `{0, 1/n, …, 1}` with `x⊗y = max(0, x+y-1)`.
///
/// `lukasiewicz_chain(n)` has `n + 1` elements.
pub fn lukasiewicz_chain(n: usize) -> Result<Quantale> {
    if n == 0 {
        return Err(Error::InvalidInput("a Łukasiewicz chain needs n ≥ 1".into()));
    }
    let names: Vec<String> = (0..=n).map(|k| fraction(k, n)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).map(|k| (k, k + 1)).collect();
    let lat = Lattice::new(names, &pairs)?;
    let tensor = (0..=n)
        .map(|a| (0..=n).map(|b| (a + b).saturating_sub(n)).collect())
        .collect();
    Quantale::assemble(lat, tensor, n, true)
}

/// A finite commutative monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl CommutativeMonoid {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = names.len();
        let bad = |m: String| Err(Error::InvalidInput(m));
        if n == 0 || unit >= n || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("monoid table is malformed".into());
        }
        for a in 0..n {
            if table[unit][a] != a {
                return bad(format!("`{}` is not a unit for `{}`", names[unit], names[a]));
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return bad(format!("not commutative at (`{}`, `{}`)", names[a], names[b]));
                }
                for c in 0..n {
                    if table[a][table[b][c]] != table[table[a][b]][c] {
                        return bad(format!(
                            "not associative at (`{}`, `{}`, `{}`)",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        Ok(CommutativeMonoid { names, table, unit })
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table, 0)
    }

    /// `{0, …, n-1}` under `max`, with unit `0`.
    pub fn max_semilattice(n: usize) -> Result<Self> {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        Self::new(names, table, 0)
    }

    /// `{0, …, n-1}` under addition truncated at `n-1`.
    pub fn truncated_sum(n: usize) -> Result<Self> {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b).min(n - 1)).collect()).collect();
        Self::new(names, table, 0)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

fn subset_name(mask: usize, names: &[String]) -> String {
    let parts: Vec<&str> = (0..names.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| names[i].as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Subsets of a commutative monoid under inclusion, with `A⊗B = {ab}` and unit `{e}`.
pub fn powerset_quantale(m: &CommutativeMonoid) -> Result<Quantale> {
    let k = m.len();
    if k > 5 {
        return Err(Error::InvalidInput(format!("a powerset of {k} points exceeds 32 elements")));
    }
    let size = 1usize << k;
    let names: Vec<String> = (0..size).map(|s| subset_name(s, &m.names)).collect();
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .filter(|&(a, b)| a & b == a)
        .collect();
    let lat = Lattice::new(names, &pairs)?;
    let mul = |a: usize, b: usize| {
        let mut out = 0usize;
        for i in (0..k).filter(|i| a >> i & 1 == 1) {
            for j in (0..k).filter(|j| b >> j & 1 == 1) {
                out |= 1 << m.table[i][j];
            }
        }
        out
    };
    let tensor = (0..size).map(|a| (0..size).map(|b| mul(a, b)).collect()).collect();
    Quantale::assemble(lat, tensor, 1 << m.unit, true)
}

/// The Boolean algebra of subsets of `k` points, as a Heyting algebra.
pub fn boolean_algebra(k: usize) -> Result<Quantale> {
    let atoms: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
    let size = 1usize << k;
    let names: Vec<String> = (0..size).map(|s| subset_name(s, &atoms)).collect();
    let leq: Vec<(String, String)> = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && a & b == a)
        .map(|(a, b)| (names[a].clone(), names[b].clone()))
        .collect();
    heyting_from_poset(&names, &leq)
}

/// Divisors of `n` under divisibility, as a Heyting algebra.
pub fn divisor_lattice(n: usize) -> Result<Quantale> {
    if n == 0 {
        return Err(Error::InvalidInput("divisor lattice of 0".into()));
    }
    let divs: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let names: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
    let leq: Vec<(String, String)> = divs
        .iter()
        .flat_map(|&a| divs.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a != b && b % a == 0)
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    heyting_from_poset(&names, &leq)
}

/// Down-closed subsets of a finite poset, a distributive lattice, as a Heyting algebra.
///
/// `leq` lists pairs `(a, b)` with `a ≤ b` among `points`; it is closed transitively.
pub fn down_sets(points: &[String], leq: &[(String, String)]) -> Result<Quantale> {
    let k = points.len();
    if k > 12 {
        return Err(Error::InvalidInput("too many points".into()));
    }
    let pos = |s: &String| {
        points
            .iter()
            .position(|p| p == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown point `{s}`")))
    };
    let mut below = vec![vec![false; k]; k];
    for (i, row) in below.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in leq {
        below[pos(a)?][pos(b)?] = true;
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if below[i][m] && below[m][j] {
                    below[i][j] = true;
                }
            }
        }
    }
    let downs: Vec<usize> = (0..1usize << k)
        .filter(|&s| {
            (0..k).all(|b| s >> b & 1 == 0 || (0..k).all(|a| !below[a][b] || s >> a & 1 == 1))
        })
        .collect();
    let names: Vec<String> = downs.iter().map(|&s| subset_name(s, points)).collect();
    let order: Vec<(String, String)> = downs
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| downs.iter().enumerate().map(move |(j, &b)| (i, a, j, b)))
        .filter(|&(i, a, j, b)| i != j && a & b == a)
        .map(|(i, _, j, _)| (names[i].clone(), names[j].clone()))
        .collect();
    heyting_from_poset(&names, &order)
}

/// The product quantale, ordered and multiplied componentwise.
pub fn product(p: &Quantale, q: &Quantale) -> Result<Quantale> {
    let (m, n) = (p.len(), q.len());
    let ix = |a: usize, b: usize| a * n + b;
    let names: Vec<String> = (0..m)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", p.name(super::El(a)), q.name(super::El(b))))
        .collect();
    let mut pairs = Vec::new();
    for a in p.elements() {
        for b in q.elements() {
            for c in p.elements() {
                for d in q.elements() {
                    if p.leq(a, c) && q.leq(b, d) {
                        pairs.push((ix(a.0, b.0), ix(c.0, d.0)));
                    }
                }
            }
        }
    }
    let lat = Lattice::new(names, &pairs)?;
    let mut tensor = vec![vec![0; m * n]; m * n];
    for a in p.elements() {
        for b in q.elements() {
            for c in p.elements() {
                for d in q.elements() {
                    tensor[ix(a.0, b.0)][ix(c.0, d.0)] = ix(p.mul(a, c).0, q.mul(b, d).0);
                }
            }
        }
    }
    Quantale::assemble(lat, tensor, ix(p.unit_el().0, q.unit_el().0), true)
}
