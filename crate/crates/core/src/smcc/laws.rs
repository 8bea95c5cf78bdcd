//! Replays the identities of a symmetric monoidal closed structure on typed cases.

use crate::category::Enumerable;
use crate::error::Result;
use crate::transcript::{source, Transcript};

use super::{eta, exp_co, exp_contra, iota, swap, uncurry, Smcc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawSuiteOptions {
    /// Cases per law for sampled instances; ignored by exhaustive ones.
    pub samples: usize,
    pub seed: u64,
    /// Adds the pentagon, hexagon and triangle coherence laws.
    pub extended: bool,
}

impl Default for LawSuiteOptions {
    fn default() -> Self {
        LawSuiteOptions { samples: 1000, seed: 0, extended: false }
    }
}

/// Typed inputs for each law. Shapes of the tuples:
///
/// * `exp_maps`: `(y, z, f)` with `f: X → Z^Y`
/// * `precompose`: `(y, z, f, g)` with `f: X → X'`, `g: X' → Z^Y`
/// * `postcompose`: `(y, z, f, g)` with `f: X → Z^Y`, `g: Z → Z'`
/// * `curried`: `(x, y, f, h)` with `f: X⊗Y → Z`, `h: W → X`
#[derive(Debug, Clone)]
pub struct LawCases<O, M> {
    pub objects: Vec<O>,
    pub pairs: Vec<(O, O)>,
    pub triples: Vec<(O, O, O)>,
    pub quads: Vec<(O, O, O, O)>,
    pub exp_maps: Vec<(O, O, M)>,
    pub precompose: Vec<(O, O, M, M)>,
    pub postcompose: Vec<(O, O, M, M)>,
    pub curried: Vec<(O, O, M, M)>,
}

impl<O, M> Default for LawCases<O, M> {
    fn default() -> Self {
        LawCases {
            objects: Vec::new(),
            pairs: Vec::new(),
            triples: Vec::new(),
            quads: Vec::new(),
            exp_maps: Vec::new(),
            precompose: Vec::new(),
            postcompose: Vec::new(),
            curried: Vec::new(),
        }
    }
}

/// An instance that can supply typed cases for the law suite.
pub trait LawSource: Smcc + Sized {
    fn law_cases(&self, opts: &LawSuiteOptions) -> Result<LawCases<Self::Obj, Self::Arr>>;

    /// Instance-specific checks appended to the suite.
    fn extra_laws(&self, _t: &mut Transcript) {}
}

/// Every typed case of every law, by enumeration of objects and hom-sets.
pub fn exhaustive_cases<A: Smcc + Enumerable>(
    cat: &A,
    extended: bool,
) -> Result<LawCases<A::Obj, A::Arr>> {
    let objs = cat.objects();
    let mut c = LawCases { objects: objs.clone(), ..LawCases::default() };
    for x in &objs {
        for y in &objs {
            c.pairs.push((x.clone(), y.clone()));
            let z_y = |z: &A::Obj| cat.exponential(y, z);
            for z in &objs {
                if extended {
                    c.triples.push((x.clone(), y.clone(), z.clone()));
                    for w in &objs {
                        c.quads.push((w.clone(), x.clone(), y.clone(), z.clone()));
                    }
                }
                let e = z_y(z)?;
                for f in cat.hom(x, &e) {
                    c.exp_maps.push((y.clone(), z.clone(), f.clone()));
                    for x0 in &objs {
                        for h in cat.hom(x0, x) {
                            c.precompose.push((y.clone(), z.clone(), h, f.clone()));
                        }
                    }
                    for z2 in &objs {
                        for g in cat.hom(z, z2) {
                            c.postcompose.push((y.clone(), z.clone(), f.clone(), g));
                        }
                    }
                }
                for f in cat.hom(&cat.tensor(x, y)?, z) {
                    for w in &objs {
                        for h in cat.hom(w, x) {
                            c.curried.push((x.clone(), y.clone(), f.clone(), h));
                        }
                    }
                }
            }
        }
    }
    Ok(c)
}

fn check<A: Smcc>(
    cat: &A,
    t: &mut Transcript,
    law: &str,
    sides: Result<(A::Arr, A::Arr)>,
    ctx: impl Fn() -> String,
) {
    match sides {
        Ok((l, r)) => {
            let ok = l == r;
            t.record(law, source::MONOIDAL_CLOSED, ok, || {
                format!("{}: {} != {}", ctx(), cat.arr_label(&l), cat.arr_label(&r))
            });
        }
        Err(e) => {
            t.record(law, source::MONOIDAL_CLOSED, false, || format!("{}: {e}", ctx()));
        }
    }
}

/// Checks every law on the cases the instance supplies.
pub fn law_suite<A: LawSource>(cat: &A, opts: &LawSuiteOptions) -> Transcript {
    let mut t = Transcript::new();
    let cases = match cat.law_cases(opts) {
        Ok(c) => c,
        Err(e) => {
            t.record("law-cases", source::PLUMBING, false, || e.to_string());
            return t;
        }
    };
    let o = |x: &A::Obj| cat.obj_label(x);
    let a = |f: &A::Arr| cat.arr_label(f);

    for (y, z, f) in &cases.exp_maps {
        let x = cat.src(f);
        check(cat, &mut t, "swap.involution", (|| -> Result<(A::Arr, A::Arr)> {
            let s = swap(cat, f, y, z)?;
            Ok((swap(cat, &s, &x, z)?, f.clone()))
        })(), || format!("f = {}", a(f)));
        check(cat, &mut t, "curry.inverse", (|| -> Result<(A::Arr, A::Arr)> {
            Ok((cat.curry(&x, y, &uncurry(cat, y, z, f)?)?, f.clone()))
        })(), || format!("f = {}", a(f)));
    }

    for x in &cases.objects {
        check(cat, &mut t, "swap.iota-is-swapped-eta", (|| -> Result<(A::Arr, A::Arr)> {
            Ok((iota(cat, x)?, swap(cat, &eta(cat, x)?, x, x)?))
        })(), || format!("X = {}", o(x)));
        check(cat, &mut t, "symmetry.unitors", (|| -> Result<(A::Arr, A::Arr)> {
            let u = cat.unit();
            Ok((
                cat.compose(&cat.left_unitor(x)?, &cat.symmetry(x, &u)?)?,
                cat.right_unitor(x)?,
            ))
        })(), || format!("X = {}", o(x)));
    }

    for (x, y) in &cases.pairs {
        check(cat, &mut t, "symmetry.involution", (|| -> Result<(A::Arr, A::Arr)> {
            let xy = cat.tensor(x, y)?;
            Ok((
                cat.compose(&cat.symmetry(y, x)?, &cat.symmetry(x, y)?)?,
                cat.identity(&xy),
            ))
        })(), || format!("X = {}, Y = {}", o(x), o(y)));
    }

    // Z^f ∘ swap(g) = swap(g ∘ f) for f: X → X', g: X' → Z^Y.
    for (y, z, f, g) in &cases.precompose {
        check(cat, &mut t, "swap.precompose", (|| -> Result<(A::Arr, A::Arr)> {
            let lhs = cat.compose(&exp_contra(cat, f, z)?, &swap(cat, g, y, z)?)?;
            let rhs = swap(cat, &cat.compose(g, f)?, y, z)?;
            Ok((lhs, rhs))
        })(), || format!("f = {}, g = {}", a(f), a(g)));
    }

    // g^X ∘ swap(f) = swap(g^Y ∘ f) for f: X → Z^Y, g: Z → Z'.
    for (y, z, f, g) in &cases.postcompose {
        check(cat, &mut t, "swap.postcompose", (|| -> Result<(A::Arr, A::Arr)> {
            let x = cat.src(f);
            let z2 = cat.tgt(g);
            let lhs = cat.compose(&exp_co(cat, g, &x)?, &swap(cat, f, y, z)?)?;
            let rhs = swap(cat, &cat.compose(&exp_co(cat, g, y)?, f)?, y, &z2)?;
            Ok((lhs, rhs))
        })(), || format!("f = {}, g = {}", a(f), a(g)));
    }

    for (x, y, f, h) in &cases.curried {
        let z = cat.tgt(f);
        check(cat, &mut t, "curry.counit", (|| -> Result<(A::Arr, A::Arr)> {
            let lam = cat.curry(x, y, f)?;
            Ok((uncurry(cat, y, &z, &lam)?, f.clone()))
        })(), || format!("f = {}", a(f)));
        check(cat, &mut t, "curry.naturality", (|| -> Result<(A::Arr, A::Arr)> {
            let lhs = cat.compose(&cat.curry(x, y, f)?, h)?;
            let hy = cat.tensor_arrows(h, &cat.identity(y))?;
            let w = cat.src(h);
            let rhs = cat.curry(&w, y, &cat.compose(f, &hy)?)?;
            Ok((lhs, rhs))
        })(), || format!("f = {}, h = {}", a(f), a(h)));
    }

    if opts.extended {
        coherence(cat, &cases, &mut t);
    }
    cat.extra_laws(&mut t);
    t
}

fn coherence<A: Smcc>(cat: &A, cases: &LawCases<A::Obj, A::Arr>, t: &mut Transcript) {
    let o = |x: &A::Obj| cat.obj_label(x);
    let id = |x: &A::Obj| cat.identity(x);
    let u = cat.unit();
    for (x, y) in &cases.pairs {
        // (ρ_X ⊗ 1) ∘ α_{X,I,Y} = 1 ⊗ λ_Y
        check(cat, t, "coherence.triangle", (|| -> Result<(A::Arr, A::Arr)> {
            let lhs = cat.compose(
                &cat.tensor_arrows(&cat.right_unitor(x)?, &id(y))?,
                &cat.associator(x, &u, y)?,
            )?;
            Ok((lhs, cat.tensor_arrows(&id(x), &cat.left_unitor(y)?)?))
        })(), || format!("X = {}, Y = {}", o(x), o(y)));
    }
    for (a, b, c) in &cases.triples {
        // α_{C,A,B} ∘ σ_{A⊗B,C} ∘ α_{A,B,C} = (σ_{A,C} ⊗ 1) ∘ α_{A,C,B} ∘ (1 ⊗ σ_{B,C})
        check(cat, t, "coherence.hexagon", (|| -> Result<(A::Arr, A::Arr)> {
            let ab = cat.tensor(a, b)?;
            let lhs = cat.compose_path(&[
                &cat.associator(a, b, c)?,
                &cat.symmetry(&ab, c)?,
                &cat.associator(c, a, b)?,
            ])?;
            let rhs = cat.compose_path(&[
                &cat.tensor_arrows(&id(a), &cat.symmetry(b, c)?)?,
                &cat.associator(a, c, b)?,
                &cat.tensor_arrows(&cat.symmetry(a, c)?, &id(b))?,
            ])?;
            Ok((lhs, rhs))
        })(), || format!("A = {}, B = {}, C = {}", o(a), o(b), o(c)));
    }
    for (w, x, y, z) in &cases.quads {
        // α_{W⊗X,Y,Z} ∘ α_{W,X,Y⊗Z} = (α_{W,X,Y} ⊗ 1) ∘ α_{W,X⊗Y,Z} ∘ (1 ⊗ α_{X,Y,Z})
        check(cat, t, "coherence.pentagon", (|| -> Result<(A::Arr, A::Arr)> {
            let wx = cat.tensor(w, x)?;
            let yz = cat.tensor(y, z)?;
            let xy = cat.tensor(x, y)?;
            let lhs = cat.compose(&cat.associator(&wx, y, z)?, &cat.associator(w, x, &yz)?)?;
            let rhs = cat.compose_path(&[
                &cat.tensor_arrows(&id(w), &cat.associator(x, y, z)?)?,
                &cat.associator(w, &xy, z)?,
                &cat.tensor_arrows(&cat.associator(w, x, y)?, &id(z))?,
            ])?;
            Ok((lhs, rhs))
        })(), || format!("W = {}, X = {}, Y = {}, Z = {}", o(w), o(x), o(y), o(z)));
    }
}
