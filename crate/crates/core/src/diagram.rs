//! Functors out of finite shape categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::fincat::{ArrIx, FinCategory, ObjIx};

/// Object and arrow images of a functor whose source is a finite category.
///
/// Images are stored densely, indexed by the shape's [`ObjIx`] and [`ArrIx`].
/// A value of this type has passed [`validate_functor`] against the target
/// category it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorData<O, M> {
    shape: Arc<FinCategory>,
    objects: Vec<O>,
    arrows: Vec<M>,
}

/// A diagram in the ambient category `A`.
pub type Diagram<A> = FunctorData<<A as Category>::Obj, <A as Category>::Arr>;

/// A functor between finite categories.
pub type FinFunctor = FunctorData<ObjIx, ArrIx>;

impl<O: Clone + Eq, M: Clone + Eq> FunctorData<O, M> {
    pub fn new<A>(cat: &A, shape: Arc<FinCategory>, objects: Vec<O>, arrows: Vec<M>) -> Result<Self>
    where
        A: Category<Obj = O, Arr = M>,
    {
        if objects.len() != shape.num_objects() || arrows.len() != shape.num_arrows() {
            return Err(Error::FunctorLaw(vec![format!(
                "expected {} object and {} arrow images, got {} and {}",
                shape.num_objects(),
                shape.num_arrows(),
                objects.len(),
                arrows.len()
            )]));
        }
        let data = FunctorData { shape, objects, arrows };
        validate_functor(cat, &data)?;
        Ok(data)
    }

    /// Builds from images keyed by shape ids; every object and arrow must be mapped.
    pub fn from_maps<A>(
        cat: &A,
        shape: Arc<FinCategory>,
        objects: &BTreeMap<String, O>,
        arrows: &BTreeMap<String, M>,
    ) -> Result<Self>
    where
        A: Category<Obj = O, Arr = M>,
    {
        let objs = shape
            .object_ids()
            .iter()
            .map(|id| {
                objects
                    .get(id)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("shape object `{id}` is unmapped")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arrs = shape
            .arrow_ixs()
            .map(|a| {
                let id = shape.arrow_id(a);
                arrows
                    .get(id)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("shape arrow `{id}` is unmapped")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cat, shape, objs, arrs)
    }

    /// Builds a functor whose arrow images are determined by the object images,
    /// as in a thin target: `arrow_for(d(src θ), d(tgt θ))`.
    pub fn from_object_map<A>(
        cat: &A,
        shape: Arc<FinCategory>,
        objects: Vec<O>,
        arrow_for: impl Fn(&O, &O) -> Result<M>,
    ) -> Result<Self>
    where
        A: Category<Obj = O, Arr = M>,
    {
        if objects.len() != shape.num_objects() {
            return Err(Error::FunctorLaw(vec!["object image count mismatch".into()]));
        }
        let arrows = shape
            .arrow_ixs()
            .map(|a| arrow_for(&objects[shape.src(&a).0], &objects[shape.tgt(&a).0]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(cat, shape, objects, arrows)
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn object(&self, i: ObjIx) -> &O {
        &self.objects[i.0]
    }

    pub fn arrow(&self, a: ArrIx) -> &M {
        &self.arrows[a.0]
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn arrows(&self) -> &[M] {
        &self.arrows
    }

    /// The same images viewed as a functor `shape^op → target^op`.
    pub fn opposite(&self) -> Self {
        FunctorData {
            shape: Arc::new(self.shape.opposite()),
            objects: self.objects.clone(),
            arrows: self.arrows.clone(),
        }
    }

    /// `self ∘ phi` for a functor `phi` into this functor's shape.
    pub fn precompose<A>(&self, cat: &A, phi: &FinFunctor) -> Result<Self>
    where
        A: Category<Obj = O, Arr = M>,
    {
        let objects = phi.objects.iter().map(|j| self.objects[j.0].clone()).collect();
        let arrows = phi.arrows.iter().map(|a| self.arrows[a.0].clone()).collect();
        Self::new(cat, phi.shape.clone(), objects, arrows)
    }
}

impl FinFunctor {
    /// The identity functor on a finite category.
    pub fn identity(shape: Arc<FinCategory>) -> Self {
        let objects = shape.object_ixs().collect();
        let arrows = shape.arrow_ixs().collect();
        FunctorData { shape, objects, arrows }
    }
}

/// Checks that the images preserve sources, targets, identities and composition,
/// by exhaustion over the shape.
pub fn validate_functor<A: Category>(cat: &A, data: &Diagram<A>) -> Result<()> {
    let shape = &data.shape;
    let mut violations = Vec::new();
    for a in shape.arrow_ixs() {
        let img = &data.arrows[a.0];
        let (s, t) = (shape.src(&a), shape.tgt(&a));
        if cat.src(img) != data.objects[s.0] || cat.tgt(img) != data.objects[t.0] {
            violations.push(format!(
                "image of `{}` is `{}`, which does not run from the image of `{}` to the image of `{}`",
                shape.arrow_id(a),
                cat.arr_label(img),
                shape.object_id(s),
                shape.object_id(t)
            ));
        }
    }
    if !violations.is_empty() {
        return Err(Error::FunctorLaw(violations));
    }
    for x in shape.object_ixs() {
        let id = shape.identity(&x);
        if data.arrows[id.0] != cat.identity(&data.objects[x.0]) {
            violations.push(format!("identity `{}` is not preserved", shape.arrow_id(id)));
        }
    }
    for (g, f) in shape.composable_pairs() {
        let gf = shape.compose(&g, &f)?;
        let want = &data.arrows[gf.0];
        match cat.compose(&data.arrows[g.0], &data.arrows[f.0]) {
            Ok(got) if &got == want => {}
            _ => violations.push(format!(
                "composition of `{}` after `{}` is not preserved",
                shape.arrow_id(g),
                shape.arrow_id(f)
            )),
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::FunctorLaw(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategoryBuilder;

    fn parallel_pair() -> Arc<FinCategory> {
        let mut b = FinCategoryBuilder::new();
        b.object("i").object("j").arrow("f", "i", "j").arrow("g", "i", "j");
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn identity_functor_is_valid() {
        let c = parallel_pair();
        let id = FinFunctor::identity(c.clone());
        validate_functor(c.as_ref(), &id).unwrap();
    }

    #[test]
    fn constant_functor_is_valid() {
        let c = parallel_pair();
        let mut t = FinCategoryBuilder::new();
        t.object("*");
        let t = t.build().unwrap();
        let star = t.object("*").unwrap();
        let id = t.identity(&star);
        FunctorData::new(&t, c.clone(), vec![star; 2], vec![id; c.num_arrows()]).unwrap();
    }

    #[test]
    fn inconsistent_collapse_breaks_composition() {
        // A chain a→b→c sent onto a parallel pair: p ↦ s, q ↦ id, but q∘p ↦ t.
        let mut src = FinCategoryBuilder::new();
        src.object("a")
            .object("b")
            .object("c")
            .arrow("p", "a", "b")
            .arrow("q", "b", "c")
            .arrow("qp", "a", "c")
            .composite("q", "p", "qp");
        let src = Arc::new(src.build().unwrap());
        let mut tgt = FinCategoryBuilder::new();
        tgt.object("x")
            .object("y")
            .arrow("s", "x", "y")
            .arrow("t", "x", "y");
        let tgt = tgt.build().unwrap();
        let (x, y) = (tgt.object("x").unwrap(), tgt.object("y").unwrap());
        let objects = BTreeMap::from([("a".into(), x), ("b".into(), y), ("c".into(), y)]);
        let arrows = BTreeMap::from([
            ("id:a".into(), tgt.identity(&x)),
            ("id:b".into(), tgt.identity(&y)),
            ("id:c".into(), tgt.identity(&y)),
            ("p".into(), tgt.arrow("s").unwrap()),
            ("q".into(), tgt.identity(&y)),
            ("qp".into(), tgt.arrow("t").unwrap()),
        ]);
        let err = FunctorData::from_maps(&tgt, src, &objects, &arrows).unwrap_err();
        let Error::FunctorLaw(v) = err else { panic!() };
        assert!(v.iter().any(|m| m.contains("`q` after `p`")), "{v:?}");
    }

    #[test]
    fn endpoint_mismatch_is_reported() {
        let c = parallel_pair();
        let i = c.object("i").unwrap();
        let objects = vec![i, i];
        let arrows = c.arrow_ixs().collect();
        assert!(matches!(
            FunctorData::new(c.as_ref(), c.clone(), objects, arrows),
            Err(Error::FunctorLaw(_))
        ));
    }
}
