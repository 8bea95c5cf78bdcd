//! The ambient-category interface every construction is written against.
//!
//! Arrow equality is structural equality of `Arr` values, so every
//! implementation must hand out arrows in a canonical form.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;

pub trait Category {
    type Obj: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type Arr: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn src(&self, f: &Self::Arr) -> Self::Obj;
    fn tgt(&self, f: &Self::Arr) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Arr;

    /// `g ∘ f`; fails unless `tgt(f) == src(g)`.
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Result<Self::Arr>;

    /// The two-sided inverse of `f`, if `f` is an isomorphism.
    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr>;

    fn obj_label(&self, x: &Self::Obj) -> String;
    fn arr_label(&self, f: &Self::Arr) -> String;

    /// Composes a path given in application order: `after(path[n-1], …, path[0])`.
    fn compose_path(&self, path: &[&Self::Arr]) -> Result<Self::Arr> {
        let (first, rest) = path
            .split_first()
            .ok_or_else(|| crate::Error::mismatch("empty composition path"))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, g| self.compose(g, &acc))
    }

    fn is_identity(&self, f: &Self::Arr) -> bool {
        let x = self.src(f);
        x == self.tgt(f) && *f == self.identity(&x)
    }
}

/// A category whose objects and hom-sets can be listed.
///
/// `objects` and `hom` return their results in ascending `Ord` order so every
/// brute-force search built on them is deterministic.
pub trait Enumerable: Category {
    fn objects(&self) -> Vec<Self::Obj>;
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Arr>;

    fn arrows(&self) -> Vec<Self::Arr> {
        let objs = self.objects();
        let mut out = Vec::new();
        for x in &objs {
            for y in &objs {
                out.extend(self.hom(x, y));
            }
        }
        out
    }
}

/// The opposite of an ambient category, sharing object and arrow values.
#[derive(Debug, Clone, Copy)]
pub struct Opposite<'a, A>(pub &'a A);

impl<A: Category> Category for Opposite<'_, A> {
    type Obj = A::Obj;
    type Arr = A::Arr;

    fn src(&self, f: &A::Arr) -> A::Obj {
        self.0.tgt(f)
    }

    fn tgt(&self, f: &A::Arr) -> A::Obj {
        self.0.src(f)
    }

    fn identity(&self, x: &A::Obj) -> A::Arr {
        self.0.identity(x)
    }

    fn compose(&self, g: &A::Arr, f: &A::Arr) -> Result<A::Arr> {
        self.0.compose(f, g)
    }

    fn inverse(&self, f: &A::Arr) -> Option<A::Arr> {
        self.0.inverse(f)
    }

    fn obj_label(&self, x: &A::Obj) -> String {
        self.0.obj_label(x)
    }

    fn arr_label(&self, f: &A::Arr) -> String {
        self.0.arr_label(f)
    }
}

impl<A: Enumerable> Enumerable for Opposite<'_, A> {
    fn objects(&self) -> Vec<A::Obj> {
        self.0.objects()
    }

    fn hom(&self, x: &A::Obj, y: &A::Obj) -> Vec<A::Arr> {
        self.0.hom(y, x)
    }
}

/// Searches a hom-set for a two-sided inverse of `f`.
pub fn inverse_by_search<A: Enumerable>(cat: &A, f: &A::Arr) -> Option<A::Arr> {
    let (x, y) = (cat.src(f), cat.tgt(f));
    let (idx, idy) = (cat.identity(&x), cat.identity(&y));
    cat.hom(&y, &x).into_iter().find(|g| {
        cat.compose(g, f).ok().as_ref() == Some(&idx) && cat.compose(f, g).ok().as_ref() == Some(&idy)
    })
}
