//! Symmetric monoidal closed structure and the combinators derived from it.
//!
//! An instance supplies the tensor, its coherence isomorphisms, internal homs
//! `Z^Y`, currying and evaluation. Everything else here (the two hom actions,
//! `ι`, `η`, the swap, evaluation at an element and the element `[δ]` of a
//! cocone) is derived generically from that data.

mod laws;

pub use laws::{exhaustive_cases, law_suite, LawCases, LawSource, LawSuiteOptions};

use crate::category::Category;
use crate::diagram::{Diagram, FunctorData};
use crate::error::{Error, Result};
use crate::limits::{check_cocone, Cocone, ConeData, LimitingCone, Limits};
use crate::transcript::{source, Transcript};

pub trait Smcc: Category {
    fn unit(&self) -> Self::Obj;
    fn tensor(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Self::Obj>;
    fn tensor_arrows(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr>;

    /// `α_{X,Y,Z}: X⊗(Y⊗Z) → (X⊗Y)⊗Z`.
    fn associator(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj) -> Result<Self::Arr>;
    /// `ρ_X: X⊗I → X`.
    fn right_unitor(&self, x: &Self::Obj) -> Result<Self::Arr>;
    /// `λ_X: I⊗X → X`.
    fn left_unitor(&self, x: &Self::Obj) -> Result<Self::Arr>;
    /// `σ_{X,Y}: X⊗Y → Y⊗X`.
    fn symmetry(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Self::Arr>;

    /// The internal hom `Z^Y`.
    fn exponential(&self, y: &Self::Obj, z: &Self::Obj) -> Result<Self::Obj>;
    /// `Λ_Y`: sends `f: X⊗Y → Z` to its transpose `X → Z^Y`.
    fn curry(&self, x: &Self::Obj, y: &Self::Obj, f: &Self::Arr) -> Result<Self::Arr>;
    /// The counit `ev: Z^Y⊗Y → Z`.
    fn eval(&self, y: &Self::Obj, z: &Self::Obj) -> Result<Self::Arr>;
}

/// An arrow out of the tensor unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element<M>(M);

impl<M: Clone> Element<M> {
    pub fn new<A: Smcc<Arr = M>>(cat: &A, arrow: M) -> Result<Self> {
        if cat.src(&arrow) != cat.unit() {
            return Err(Error::mismatch(format!(
                "element `{}` does not start at the unit",
                cat.arr_label(&arrow)
            )));
        }
        Ok(Element(arrow))
    }

    pub fn arrow(&self) -> &M {
        &self.0
    }
}

fn expect_tgt<A: Category>(cat: &A, f: &A::Arr, want: &A::Obj, what: &str) -> Result<()> {
    if &cat.tgt(f) == want {
        Ok(())
    } else {
        Err(Error::mismatch(format!(
            "{what}: `{}` ends at `{}`, expected `{}`",
            cat.arr_label(f),
            cat.obj_label(&cat.tgt(f)),
            cat.obj_label(want)
        )))
    }
}

/// The inverse of currying: `g: X → Z^Y` becomes `ev ∘ (g ⊗ 1_Y): X⊗Y → Z`.
pub fn uncurry<A: Smcc>(cat: &A, y: &A::Obj, z: &A::Obj, g: &A::Arr) -> Result<A::Arr> {
    expect_tgt(cat, g, &cat.exponential(y, z)?, "uncurry")?;
    let g_y = cat.tensor_arrows(g, &cat.identity(y))?;
    cat.compose(&cat.eval(y, z)?, &g_y)
}

/// `ι_X = Λ_I(ρ_X): X → X^I`.
pub fn iota<A: Smcc>(cat: &A, x: &A::Obj) -> Result<A::Arr> {
    cat.curry(x, &cat.unit(), &cat.right_unitor(x)?)
}

pub fn iota_inverse<A: Smcc>(cat: &A, x: &A::Obj) -> Result<A::Arr> {
    let i = iota(cat, x)?;
    cat.inverse(&i)
        .ok_or_else(|| Error::NotInvertible(format!("ι at `{}`", cat.obj_label(x))))
}

/// `η_X = Λ_X(λ_X): I → X^X`.
pub fn eta<A: Smcc>(cat: &A, x: &A::Obj) -> Result<A::Arr> {
    cat.curry(&cat.unit(), x, &cat.left_unitor(x)?)
}

/// The swap of `f: X → Z^Y`: `Λ_X(ev ∘ (f ⊗ 1_Y) ∘ σ_{Y,X}): Y → Z^X`.
pub fn swap<A: Smcc>(cat: &A, f: &A::Arr, y: &A::Obj, z: &A::Obj) -> Result<A::Arr> {
    let x = cat.src(f);
    expect_tgt(cat, f, &cat.exponential(y, z)?, "swap")?;
    let body = cat.compose_path(&[
        &cat.symmetry(y, &x)?,
        &cat.tensor_arrows(f, &cat.identity(y))?,
        &cat.eval(y, z)?,
    ])?;
    cat.curry(y, &x, &body)
}

/// `Z^f: Z^{Y'} → Z^Y` for `f: Y → Y'`, as `Λ_Y(ev ∘ (1 ⊗ f))`.
pub fn exp_contra<A: Smcc>(cat: &A, f: &A::Arr, z: &A::Obj) -> Result<A::Arr> {
    let (y, y2) = (cat.src(f), cat.tgt(f));
    let z_y2 = cat.exponential(&y2, z)?;
    let body = cat.compose(
        &cat.eval(&y2, z)?,
        &cat.tensor_arrows(&cat.identity(&z_y2), f)?,
    )?;
    cat.curry(&z_y2, &y, &body)
}

/// `g^Y: Z^Y → Z'^Y` for `g: Z → Z'`, as `Λ_Y(g ∘ ev)`.
pub fn exp_co<A: Smcc>(cat: &A, g: &A::Arr, y: &A::Obj) -> Result<A::Arr> {
    let z = cat.src(g);
    let body = cat.compose(g, &cat.eval(y, &z)?)?;
    cat.curry(&cat.exponential(y, &z)?, y, &body)
}

/// Evaluation at an element `e: I → X`: `ι_Y^{-1} ∘ Y^e: Y^X → Y`.
pub fn ev_at<A: Smcc>(cat: &A, e: &Element<A::Arr>, y: &A::Obj) -> Result<A::Arr> {
    cat.compose(&iota_inverse(cat, y)?, &exp_contra(cat, e.arrow(), y)?)
}

/// The diagram `X^d: I^op → C`, sending `i` to `X^{d(i)}` and `θ` to `X^{d(θ)}`.
pub fn exp_diagram<A: Smcc>(cat: &A, x: &A::Obj, d: &Diagram<A>) -> Result<Diagram<A>> {
    let shape = std::sync::Arc::new(d.shape().opposite());
    let objects = d
        .objects()
        .iter()
        .map(|o| cat.exponential(o, x))
        .collect::<Result<Vec<_>>>()?;
    let arrows = d
        .arrows()
        .iter()
        .map(|a| exp_contra(cat, a, x))
        .collect::<Result<Vec<_>>>()?;
    FunctorData::new(cat, shape, objects, arrows)
}

/// The element `[δ] = ⟨X^{δ_i}⟩_i ∘ η_X` of `Lim X^d` determined by a cocone `δ`
/// with vertex `X`, together with a replay of `ev_{[δ]} ∘ swap(π_{i,X}) = δ_i`
/// for every `i`, one recorded equation per rewriting step.
///
/// `lim` must be a limiting cone over `exp_diagram(cat, X, d)`.
pub fn cocone_element<A: Smcc + Limits>(
    cat: &A,
    d: &Diagram<A>,
    delta: &Cocone<A>,
    lim: &LimitingCone<A>,
) -> Result<(Element<A::Arr>, Transcript)> {
    check_cocone(cat, d, delta)?;
    let x = &delta.vertex;
    let x_x = cat.exponential(x, x)?;
    let cone = ConeData {
        vertex: x_x.clone(),
        edges: delta
            .edges
            .iter()
            .map(|e| exp_contra(cat, e, x))
            .collect::<Result<Vec<_>>>()?,
    };
    let tuple = crate::limits::mediator(cat, lim, &cone)?;
    let eta_x = eta(cat, x)?;
    let element = Element::new(cat, cat.compose(&tuple, &eta_x)?)?;

    let mut t = Transcript::new();
    let src = source::LIMITS;
    let ev = ev_at(cat, &element, x)?;
    let iota_inv = iota_inverse(cat, x)?;
    let x_e = exp_contra(cat, element.arrow(), x)?;
    let swapped_eta = swap(cat, &eta_x, x, x)?;
    for (k, (pi, di)) in lim.edges().iter().zip(&delta.edges).enumerate() {
        let d_i = d.object(crate::fincat::ObjIx(k));
        let swapped_pi = swap(cat, pi, d_i, x)?;
        let chain = [
            cat.compose(&ev, &swapped_pi)?,
            cat.compose_path(&[&swapped_pi, &x_e, &iota_inv])?,
            cat.compose(&iota_inv, &swap(cat, &cat.compose(pi, element.arrow())?, d_i, x)?)?,
            cat.compose(
                &iota_inv,
                &swap(cat, &cat.compose_path(&[&eta_x, &tuple, pi])?, d_i, x)?,
            )?,
            cat.compose(
                &iota_inv,
                &swap(cat, &cat.compose(&exp_contra(cat, di, x)?, &eta_x)?, d_i, x)?,
            )?,
            cat.compose_path(&[di, &swapped_eta, &iota_inv])?,
            di.clone(),
        ];
        for (step, w) in chain.windows(2).enumerate() {
            t.equal(&format!("element.step-{}", step + 1), src, &w[0], &w[1], || {
                format!("edge {k}")
            });
        }
        t.equal("element.evaluates-to-edge", src, &chain[0], di, || format!("edge {k}"));
    }
    Ok((element, t))
}
