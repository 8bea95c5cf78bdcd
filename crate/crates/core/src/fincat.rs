//! Finitely-presented categories with fully materialized composition tables.
//!
//! Objects and arrows are addressed by string ids in documents and by dense
//! indices ([`ObjIx`], [`ArrIx`]) internally. Both index spaces are sorted by
//! id, so index order coincides with lexicographic id order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::category::{inverse_by_search, Category, Enumerable};
use crate::error::{CategoryViolation, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjIx(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrIx(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawArrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// The unvalidated description of a finite category, as read from a document.
///
/// Composition entries are triples `[g, f, g∘f]`. When `leq` is present the
/// category is the preorder it generates and the other arrow fields must be
/// empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<RawArrow>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composition: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ArrowData {
    id: String,
    src: usize,
    tgt: usize,
}

#[derive(Debug, Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    arrows: Vec<ArrowData>,
    arr_index: HashMap<String, usize>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.identities == other.identities
            && self.composition == other.composition
    }
}

impl Eq for FinCategory {}

/// Validates a raw description, reporting every violated law.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    if let Some(leq) = &raw.leq {
        if !raw.arrows.is_empty() || !raw.identities.is_empty() || !raw.composition.is_empty() {
            return Err(Error::InvalidInput(
                "`leq` cannot be combined with explicit arrows".into(),
            ));
        }
        let pairs: Vec<(String, String)> =
            leq.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        return FinCategory::from_preorder(&raw.objects, &pairs);
    }

    let mut violations = Vec::new();

    let mut objects = raw.objects.clone();
    objects.sort();
    for w in objects.windows(2) {
        if w[0] == w[1] {
            violations.push(CategoryViolation::DuplicateId(w[0].clone()));
        }
    }
    objects.dedup();
    let obj_index: HashMap<String, usize> =
        objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();

    let mut raw_arrows = raw.arrows.clone();
    raw_arrows.sort_by(|a, b| a.id.cmp(&b.id));
    let mut arrows = Vec::with_capacity(raw_arrows.len());
    let mut seen = BTreeSet::new();
    for a in &raw_arrows {
        if !seen.insert(a.id.clone()) {
            violations.push(CategoryViolation::DuplicateId(a.id.clone()));
            continue;
        }
        let lookup = |o: &String, violations: &mut Vec<CategoryViolation>| {
            let ix = obj_index.get(o).copied();
            if ix.is_none() {
                violations.push(CategoryViolation::UnknownObject {
                    arrow: a.id.clone(),
                    object: o.clone(),
                });
            }
            ix
        };
        let (s, t) = (lookup(&a.src, &mut violations), lookup(&a.tgt, &mut violations));
        if let (Some(src), Some(tgt)) = (s, t) {
            arrows.push(ArrowData { id: a.id.clone(), src, tgt });
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidCategory(violations));
    }
    let arr_index: HashMap<String, usize> =
        arrows.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();

    let mut identities = vec![usize::MAX; objects.len()];
    for (ix, o) in objects.iter().enumerate() {
        match raw.identities.get(o) {
            None => violations.push(CategoryViolation::MissingIdentity { object: o.clone() }),
            Some(id) => match arr_index.get(id) {
                None => violations.push(CategoryViolation::UnknownArrow {
                    context: format!("identity of `{o}`"),
                    arrow: id.clone(),
                }),
                Some(&a) if arrows[a].src == ix && arrows[a].tgt == ix => identities[ix] = a,
                Some(_) => violations.push(CategoryViolation::BadIdentity {
                    object: o.clone(),
                    arrow: id.clone(),
                }),
            },
        }
    }
    for o in raw.identities.keys() {
        if !obj_index.contains_key(o) {
            violations.push(CategoryViolation::UnknownArrow {
                context: "identities".into(),
                arrow: o.clone(),
            });
        }
    }

    let mut composition: HashMap<(usize, usize), usize> = HashMap::new();
    for [g, f, r] in &raw.composition {
        let ids: Vec<Option<usize>> = [g, f, r]
            .iter()
            .map(|id| {
                let ix = arr_index.get(*id).copied();
                if ix.is_none() {
                    violations.push(CategoryViolation::UnknownArrow {
                        context: format!("composite `{g}` after `{f}`"),
                        arrow: (*id).clone(),
                    });
                }
                ix
            })
            .collect();
        let (Some(gi), Some(fi), Some(ri)) = (ids[0], ids[1], ids[2]) else {
            continue;
        };
        if arrows[fi].tgt != arrows[gi].src {
            violations.push(CategoryViolation::NotComposable { g: g.clone(), f: f.clone() });
            continue;
        }
        if arrows[ri].src != arrows[fi].src || arrows[ri].tgt != arrows[gi].tgt {
            violations.push(CategoryViolation::CompositeEndpoints {
                g: g.clone(),
                f: f.clone(),
                result: r.clone(),
            });
            continue;
        }
        if let Some(&prev) = composition.get(&(gi, fi)) {
            if prev != ri {
                violations.push(CategoryViolation::ConflictingComposite {
                    g: g.clone(),
                    f: f.clone(),
                    first: arrows[prev].id.clone(),
                    second: r.clone(),
                });
            }
            continue;
        }
        composition.insert((gi, fi), ri);
    }

    for (fi, fa) in arrows.iter().enumerate() {
        for (gi, ga) in arrows.iter().enumerate() {
            if fa.tgt == ga.src && !composition.contains_key(&(gi, fi)) {
                violations.push(CategoryViolation::CompositionGap {
                    g: ga.id.clone(),
                    f: fa.id.clone(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidCategory(violations));
    }

    let cat = FinCategory::assemble(objects, obj_index, arrows, arr_index, identities, composition);
    let laws = cat.law_violations();
    if laws.is_empty() {
        Ok(cat)
    } else {
        Err(Error::InvalidCategory(laws))
    }
}

impl FinCategory {
    fn assemble(
        objects: Vec<String>,
        obj_index: HashMap<String, usize>,
        arrows: Vec<ArrowData>,
        arr_index: HashMap<String, usize>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Self {
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            homs.entry((a.src, a.tgt)).or_default().push(i);
        }
        FinCategory { objects, obj_index, arrows, arr_index, identities, composition, homs }
    }

    /// Identity and associativity laws, checked over every composable pair and triple.
    fn law_violations(&self) -> Vec<CategoryViolation> {
        let mut out = Vec::new();
        for (fi, fa) in self.arrows.iter().enumerate() {
            let (ids, idt) = (self.identities[fa.src], self.identities[fa.tgt]);
            for (id, got) in [
                (idt, self.composition[&(idt, fi)]),
                (ids, self.composition[&(fi, ids)]),
            ] {
                if got != fi {
                    out.push(CategoryViolation::IdentityLaw {
                        identity: self.arrows[id].id.clone(),
                        arrow: fa.id.clone(),
                        got: self.arrows[got].id.clone(),
                    });
                }
            }
        }
        for (fi, fa) in self.arrows.iter().enumerate() {
            for gi in self.arrows_from(fa.tgt) {
                let gf = self.composition[&(gi, fi)];
                for hi in self.arrows_from(self.arrows[gi].tgt) {
                    let left = self.composition[&(hi, gf)];
                    let right = self.composition[&(self.composition[&(hi, gi)], fi)];
                    if left != right {
                        out.push(CategoryViolation::NonAssociative {
                            h: self.arrows[hi].id.clone(),
                            g: self.arrows[gi].id.clone(),
                            f: fa.id.clone(),
                            left: self.arrows[left].id.clone(),
                            right: self.arrows[right].id.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    fn arrows_from(&self, src: usize) -> impl Iterator<Item = usize> + '_ {
        self.homs
            .range((src, 0)..=(src, usize::MAX))
            .flat_map(|(_, v)| v.iter().copied())
    }

    /// The thin category generated by a preorder. Arrow ids are `"x<=y"`.
    pub fn from_preorder(objects: &[String], leq: &[(String, String)]) -> Result<Self> {
        let mut objs = objects.to_vec();
        objs.sort();
        let n = objs.len();
        if objs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate object in preorder".into()));
        }
        let ix = |o: &String| {
            objs.binary_search(o)
                .map_err(|_| Error::InvalidInput(format!("unknown object `{o}` in preorder")))
        };
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in leq {
            rel[ix(a)?][ix(b)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let name = |i: usize, j: usize| format!("{}<={}", objs[i], objs[j]);
        let mut b = FinCategoryBuilder::new();
        for (i, o) in objs.iter().enumerate() {
            b.object_with_identity(o, &name(i, i));
        }
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] && i != j {
                    b.arrow(&name(i, j), &objs[i], &objs[j]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rel[i][j] && rel[j][k] {
                        b.composite(&name(j, k), &name(i, j), &name(i, k));
                    }
                }
            }
        }
        b.build()
    }

    /// Arrows reversed and composition transposed; ids are kept.
    pub fn opposite(&self) -> FinCategory {
        let arrows = self
            .arrows
            .iter()
            .map(|a| ArrowData { id: a.id.clone(), src: a.tgt, tgt: a.src })
            .collect();
        let composition = self.composition.iter().map(|(&(g, f), &r)| ((f, g), r)).collect();
        FinCategory::assemble(
            self.objects.clone(),
            self.obj_index.clone(),
            arrows,
            self.arr_index.clone(),
            self.identities.clone(),
            composition,
        )
    }

    /// The full subcategory on the given objects.
    pub fn full_subcategory(&self, keep: &[ObjIx]) -> FinCategory {
        let keep: BTreeSet<usize> = keep.iter().map(|o| o.0).collect();
        let mut b = FinCategoryBuilder::new();
        for &o in &keep {
            b.object_with_identity(&self.objects[o], &self.arrows[self.identities[o]].id);
        }
        let kept: Vec<usize> = (0..self.arrows.len())
            .filter(|&a| keep.contains(&self.arrows[a].src) && keep.contains(&self.arrows[a].tgt))
            .collect();
        for &a in &kept {
            if !self.identities.contains(&a) {
                let d = &self.arrows[a];
                b.arrow(&d.id, &self.objects[d.src], &self.objects[d.tgt]);
            }
        }
        for &f in &kept {
            for &g in &kept {
                if let Some(&r) = self.composition.get(&(g, f)) {
                    b.composite(&self.arrows[g].id, &self.arrows[f].id, &self.arrows[r].id);
                }
            }
        }
        b.build().expect("full subcategory of a valid category is valid")
    }

    pub fn to_raw(&self) -> RawCategory {
        let mut composition: Vec<[String; 3]> = self
            .composition
            .iter()
            .map(|(&(g, f), &r)| {
                [self.arrows[g].id.clone(), self.arrows[f].id.clone(), self.arrows[r].id.clone()]
            })
            .collect();
        composition.sort();
        RawCategory {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawArrow {
                    id: a.id.clone(),
                    src: self.objects[a.src].clone(),
                    tgt: self.objects[a.tgt].clone(),
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .enumerate()
                .map(|(i, o)| (o.clone(), self.arrows[self.identities[i]].id.clone()))
                .collect(),
            composition,
            leq: None,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, x: ObjIx) -> &str {
        &self.objects[x.0]
    }

    pub fn arrow_id(&self, f: ArrIx) -> &str {
        &self.arrows[f.0].id
    }

    pub fn object(&self, id: &str) -> Option<ObjIx> {
        self.obj_index.get(id).map(|&i| ObjIx(i))
    }

    pub fn arrow(&self, id: &str) -> Option<ArrIx> {
        self.arr_index.get(id).map(|&i| ArrIx(i))
    }

    pub fn object_ixs(&self) -> impl Iterator<Item = ObjIx> {
        (0..self.objects.len()).map(ObjIx)
    }

    pub fn arrow_ixs(&self) -> impl Iterator<Item = ArrIx> {
        (0..self.arrows.len()).map(ArrIx)
    }

    /// All pairs `(g, f)` with `tgt(f) == src(g)`.
    pub fn composable_pairs(&self) -> Vec<(ArrIx, ArrIx)> {
        let mut out = Vec::new();
        for (fi, fa) in self.arrows.iter().enumerate() {
            out.extend(self.arrows_from(fa.tgt).map(|gi| (ArrIx(gi), ArrIx(fi))));
        }
        out
    }

    /// True when no hom-set has more than one arrow.
    pub fn is_thin(&self) -> bool {
        self.homs.values().all(|v| v.len() <= 1)
    }
}

impl Category for FinCategory {
    type Obj = ObjIx;
    type Arr = ArrIx;

    fn src(&self, f: &ArrIx) -> ObjIx {
        ObjIx(self.arrows[f.0].src)
    }

    fn tgt(&self, f: &ArrIx) -> ObjIx {
        ObjIx(self.arrows[f.0].tgt)
    }

    fn identity(&self, x: &ObjIx) -> ArrIx {
        ArrIx(self.identities[x.0])
    }

    fn compose(&self, g: &ArrIx, f: &ArrIx) -> Result<ArrIx> {
        self.composition.get(&(g.0, f.0)).map(|&r| ArrIx(r)).ok_or_else(|| {
            Error::mismatch(format!(
                "`{}` cannot follow `{}`",
                self.arrows[g.0].id, self.arrows[f.0].id
            ))
        })
    }

    fn inverse(&self, f: &ArrIx) -> Option<ArrIx> {
        inverse_by_search(self, f)
    }

    fn obj_label(&self, x: &ObjIx) -> String {
        self.objects[x.0].clone()
    }

    fn arr_label(&self, f: &ArrIx) -> String {
        self.arrows[f.0].id.clone()
    }
}

impl Enumerable for FinCategory {
    fn objects(&self) -> Vec<ObjIx> {
        self.object_ixs().collect()
    }

    fn hom(&self, x: &ObjIx, y: &ObjIx) -> Vec<ArrIx> {
        self.homs
            .get(&(x.0, y.0))
            .map(|v| v.iter().map(|&a| ArrIx(a)).collect())
            .unwrap_or_default()
    }

    fn arrows(&self) -> Vec<ArrIx> {
        self.arrow_ixs().collect()
    }
}

/// Incremental construction of a [`FinCategory`].
///
/// Identities are created with each object and their composites are filled
/// in automatically; every other composite must be supplied.
#[derive(Debug, Default)]
pub struct FinCategoryBuilder {
    raw: RawCategory,
}

impl FinCategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object whose identity arrow is named `id:<object>`.
    pub fn object(&mut self, id: &str) -> &mut Self {
        self.object_with_identity(id, &format!("id:{id}"))
    }

    pub fn object_with_identity(&mut self, id: &str, identity: &str) -> &mut Self {
        self.raw.objects.push(id.to_string());
        self.raw.arrows.push(RawArrow { id: identity.into(), src: id.into(), tgt: id.into() });
        self.raw.identities.insert(id.into(), identity.into());
        self
    }

    pub fn arrow(&mut self, id: &str, src: &str, tgt: &str) -> &mut Self {
        self.raw.arrows.push(RawArrow { id: id.into(), src: src.into(), tgt: tgt.into() });
        self
    }

    /// Records `g ∘ f = result`.
    pub fn composite(&mut self, g: &str, f: &str, result: &str) -> &mut Self {
        self.raw.composition.push([g.into(), f.into(), result.into()]);
        self
    }

    pub fn build(&self) -> Result<FinCategory> {
        let mut raw = self.raw.clone();
        let mut explicit: BTreeSet<(String, String)> = raw
            .composition
            .iter()
            .map(|[g, f, _]| (g.clone(), f.clone()))
            .collect();
        let mut extra = Vec::new();
        for a in &raw.arrows {
            let (Some(it), Some(is)) = (raw.identities.get(&a.tgt), raw.identities.get(&a.src))
            else {
                return Err(Error::InvalidInput(format!(
                    "arrow `{}` mentions an unknown object",
                    a.id
                )));
            };
            for (g, f) in [(it.clone(), a.id.clone()), (a.id.clone(), is.clone())] {
                if explicit.insert((g.clone(), f.clone())) {
                    extra.push([g, f, a.id.clone()]);
                }
            }
        }
        raw.composition.extend(extra);
        validate_category(&raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinCategory {
        let objs: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let leq: Vec<(String, String)> =
            (1..n).map(|i| (objs[i - 1].clone(), objs[i].clone())).collect();
        FinCategory::from_preorder(&objs, &leq).unwrap()
    }

    #[test]
    fn terminal_category() {
        let raw = RawCategory {
            objects: vec!["*".into()],
            arrows: vec![RawArrow { id: "1".into(), src: "*".into(), tgt: "*".into() }],
            identities: [("*".to_string(), "1".to_string())].into(),
            composition: vec![["1".into(), "1".into(), "1".into()]],
            leq: None,
        };
        let c = validate_category(&raw).unwrap();
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_arrows(), 1);
    }

    #[test]
    fn missing_identity_composite_is_a_gap() {
        let raw = RawCategory {
            objects: vec!["0".into(), "1".into()],
            arrows: vec![
                RawArrow { id: "i0".into(), src: "0".into(), tgt: "0".into() },
                RawArrow { id: "i1".into(), src: "1".into(), tgt: "1".into() },
                RawArrow { id: "f".into(), src: "0".into(), tgt: "1".into() },
            ],
            identities: [("0".into(), "i0".into()), ("1".into(), "i1".into())].into(),
            composition: vec![
                ["i0".into(), "i0".into(), "i0".into()],
                ["i1".into(), "i1".into(), "i1".into()],
                ["i1".into(), "f".into(), "f".into()],
            ],
            leq: None,
        };
        let Err(Error::InvalidCategory(v)) = validate_category(&raw) else {
            panic!("expected a gap");
        };
        assert_eq!(v, vec![CategoryViolation::CompositionGap { g: "f".into(), f: "i0".into() }]);
    }

    #[test]
    fn missing_identity_is_reported() {
        let raw = RawCategory { objects: vec!["a".into()], ..Default::default() };
        let Err(Error::InvalidCategory(v)) = validate_category(&raw) else { panic!() };
        assert!(v.contains(&CategoryViolation::MissingIdentity { object: "a".into() }));
    }

    #[test]
    fn non_associative_table_names_the_triple() {
        // (a∘a)∘a = b∘a = b, but a∘(a∘a) = a∘b = a.
        let mut b = FinCategoryBuilder::new();
        b.object_with_identity("*", "1")
            .arrow("a", "*", "*")
            .arrow("b", "*", "*")
            .composite("a", "a", "b")
            .composite("a", "b", "a")
            .composite("b", "a", "b")
            .composite("b", "b", "b");
        let Err(Error::InvalidCategory(v)) = b.build() else { panic!("table is not associative") };
        assert!(v
            .iter()
            .all(|x| matches!(x, CategoryViolation::NonAssociative { .. })));
        assert!(!v.is_empty());
    }

    #[test]
    fn chain_poset_has_six_arrows() {
        let c = chain(3);
        assert_eq!(c.num_arrows(), 6);
        assert!(c.is_thin());
        assert_eq!(c.composable_pairs().len(), 10);
    }

    #[test]
    fn opposite_of_chain() {
        let c = chain(2);
        let op = c.opposite();
        let f = op.arrow("0<=1").unwrap();
        assert_eq!(op.object_id(op.src(&f)), "1");
        assert_eq!(op.object_id(op.tgt(&f)), "0");
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn raw_round_trip() {
        let c = chain(3);
        assert_eq!(validate_category(&c.to_raw()).unwrap(), c);
    }

    #[test]
    fn full_subcategory_restricts() {
        let c = chain(3);
        let sub = c.full_subcategory(&[c.object("0").unwrap(), c.object("2").unwrap()]);
        assert_eq!(sub.num_objects(), 2);
        assert_eq!(sub.num_arrows(), 3);
    }
}
