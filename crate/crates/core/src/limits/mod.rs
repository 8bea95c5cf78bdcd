//! Cones, limiting cones and their mediators; colimits by duality.

mod brute;
mod freyd;

pub use brute::{
    all_cones, cones_with_vertex, factor_brute, factorizations, initial_object_brute,
    limit_brute, verify_exhaustive,
};
pub use freyd::{freyd_refine, FreydOutcome};

use crate::category::{Category, Opposite};
use crate::diagram::{Diagram, FunctorData};
use crate::error::{Error, Result};
use crate::transcript::{source, Transcript};

/// A vertex with one edge per shape object.
///
/// As a cone the edges run `vertex → d(i)`; as a cocone `d(i) → vertex`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeData<O, M> {
    pub vertex: O,
    pub edges: Vec<M>,
}

pub type Cone<A> = ConeData<<A as Category>::Obj, <A as Category>::Arr>;
pub type Cocone<A> = ConeData<<A as Category>::Obj, <A as Category>::Arr>;

/// A cone over `diagram` known to be terminal among all cones over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitingConeData<O, M> {
    pub diagram: FunctorData<O, M>,
    pub cone: ConeData<O, M>,
}

pub type LimitingCone<A> = LimitingConeData<<A as Category>::Obj, <A as Category>::Arr>;

impl<O, M> LimitingConeData<O, M> {
    pub fn vertex(&self) -> &O {
        &self.cone.vertex
    }

    pub fn edges(&self) -> &[M] {
        &self.cone.edges
    }
}

/// A limit engine for an ambient category.
pub trait Limits: Category + Sized {
    /// A limiting cone over `d`, or `NoLimit`.
    fn limit(&self, d: &Diagram<Self>) -> Result<Cone<Self>>;

    /// The unique arrow `f` with `limit.edges[i] ∘ f = cone.edges[i]` for all `i`.
    fn factor(&self, d: &Diagram<Self>, limit: &Cone<Self>, cone: &Cone<Self>) -> Result<Self::Arr>;

    /// Checks the cone laws and terminality of `cone`.
    fn verify_limit(&self, d: &Diagram<Self>, cone: &Cone<Self>) -> Transcript;
}

/// Checks `d(θ) ∘ ρ_i = ρ_j` for every shape arrow `θ: i → j`.
pub fn check_cone<A: Category>(cat: &A, d: &Diagram<A>, c: &Cone<A>) -> Result<()> {
    let shape = d.shape();
    if c.edges.len() != shape.num_objects() {
        return Err(Error::NotACone(format!(
            "{} edges for {} shape objects",
            c.edges.len(),
            shape.num_objects()
        )));
    }
    for i in shape.object_ixs() {
        let e = &c.edges[i.0];
        if cat.src(e) != c.vertex || &cat.tgt(e) != d.object(i) {
            return Err(Error::NotACone(format!(
                "edge at `{}` is `{}`, not an arrow from the vertex to its image",
                shape.object_id(i),
                cat.arr_label(e)
            )));
        }
    }
    for a in shape.arrow_ixs() {
        let (i, j) = (shape.src(&a), shape.tgt(&a));
        let lhs = cat.compose(d.arrow(a), &c.edges[i.0])?;
        if lhs != c.edges[j.0] {
            return Err(Error::NotACone(format!(
                "triangle over `{}` does not commute",
                shape.arrow_id(a)
            )));
        }
    }
    Ok(())
}

/// Checks `δ_j ∘ d(θ) = δ_i` for every shape arrow `θ: i → j`.
pub fn check_cocone<A: Category>(cat: &A, d: &Diagram<A>, c: &Cocone<A>) -> Result<()> {
    check_cone(&Opposite(cat), &d.opposite(), c)
}

pub fn limit<A: Limits>(cat: &A, d: &Diagram<A>) -> Result<LimitingCone<A>> {
    let cone = cat.limit(d)?;
    Ok(LimitingConeData { diagram: d.clone(), cone })
}

/// `⟨ρ_i⟩_i`: the factorization of `c` through the limiting cone.
pub fn mediator<A: Limits>(cat: &A, lim: &LimitingCone<A>, c: &Cone<A>) -> Result<A::Arr> {
    check_cone(cat, &lim.diagram, c)?;
    cat.factor(&lim.diagram, &lim.cone, c)
}

pub fn is_limiting_cone<A: Limits>(cat: &A, d: &Diagram<A>, c: &Cone<A>) -> Transcript {
    cat.verify_limit(d, c)
}

/// The colimit of `d`, computed as a limit in the opposite category.
pub fn colimit_brute<A: crate::Enumerable>(cat: &A, d: &Diagram<A>) -> Result<Cocone<A>> {
    limit_brute(&Opposite(cat), &d.opposite())
}

/// Exhaustive colimit verification, dual to [`verify_exhaustive`].
pub fn verify_colimit_exhaustive<A: crate::Enumerable>(
    cat: &A,
    d: &Diagram<A>,
    c: &Cocone<A>,
) -> Transcript {
    verify_exhaustive(&Opposite(cat), &d.opposite(), c)
}

/// Checks that `f` is a morphism of cones `c → lim`: `π_i ∘ f = ρ_i`.
pub fn is_cone_morphism<A: Category>(
    cat: &A,
    target: &Cone<A>,
    c: &Cone<A>,
    f: &A::Arr,
) -> bool {
    cat.src(f) == c.vertex
        && cat.tgt(f) == target.vertex
        && target
            .edges
            .iter()
            .zip(&c.edges)
            .all(|(p, r)| cat.compose(p, f).ok().as_ref() == Some(r))
}

/// Records the mediator laws `π_i ∘ ⟨ρ_i⟩ = ρ_i` and `⟨ρ_i⟩ ∘ φ = ⟨ρ_i ∘ φ⟩` for a given `φ`.
pub fn replay_mediator_laws<A: Limits>(
    cat: &A,
    lim: &LimitingCone<A>,
    c: &Cone<A>,
    phi: Option<&A::Arr>,
    transcript: &mut Transcript,
) -> Result<A::Arr> {
    let m = mediator(cat, lim, c)?;
    transcript.record(
        "limit.mediator-factors",
        source::LIMITS,
        is_cone_morphism(cat, &lim.cone, c, &m),
        || format!("mediator {}", cat.arr_label(&m)),
    );
    if let Some(phi) = phi {
        let shifted = ConeData {
            vertex: cat.src(phi),
            edges: c
                .edges
                .iter()
                .map(|e| cat.compose(e, phi))
                .collect::<Result<Vec<_>>>()?,
        };
        let lhs = cat.compose(&m, phi)?;
        let rhs = mediator(cat, lim, &shifted)?;
        transcript.equal("limit.mediator-precomposition", source::LIMITS, &lhs, &rhs, || {
            format!("φ = {}", cat.arr_label(phi))
        });
    }
    Ok(m)
}

impl Limits for crate::fincat::FinCategory {
    fn limit(&self, d: &Diagram<Self>) -> Result<Cone<Self>> {
        limit_brute(self, d)
    }

    fn factor(&self, d: &Diagram<Self>, limit: &Cone<Self>, cone: &Cone<Self>) -> Result<crate::fincat::ArrIx> {
        factor_brute(self, d, limit, cone)
    }

    fn verify_limit(&self, d: &Diagram<Self>, cone: &Cone<Self>) -> Transcript {
        verify_exhaustive(self, d, cone)
    }
}
