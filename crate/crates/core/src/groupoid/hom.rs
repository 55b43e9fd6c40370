use std::fmt;
use std::sync::Arc;

use super::FinGroupoid;
use crate::error::{Error, Result};
use crate::fintop::CMap;
use crate::point::Point;

/// A continuous functor, stored as index tables on objects and arrows.
#[derive(Clone)]
pub struct GroupoidHom {
    dom: Arc<FinGroupoid>,
    cod: Arc<FinGroupoid>,
    f0: Vec<usize>,
    f1: Vec<usize>,
}

impl PartialEq for GroupoidHom {
    fn eq(&self, other: &GroupoidHom) -> bool {
        self.f0 == other.f0 && self.f1 == other.f1 && *self.dom == *other.dom && *self.cod == *other.cod
    }
}

impl fmt::Debug for GroupoidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<String> = self
            .f0
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.dom.obj().point(i), self.cod.obj().point(j)))
            .collect();
        write!(f, "GroupoidHom[{}]", objs.join(" "))
    }
}

const H: &str = "GroupoidHom";

impl GroupoidHom {
    pub fn new(dom: Arc<FinGroupoid>, cod: Arc<FinGroupoid>, f0: Vec<usize>, f1: Vec<usize>) -> Result<GroupoidHom> {
        if f0.len() != dom.n_obj() || f1.len() != dom.n_arr() {
            return Err(Error::invalid(H, "shape", "tables do not cover the domain"));
        }
        if f0.iter().any(|&x| x >= cod.n_obj()) || f1.iter().any(|&a| a >= cod.n_arr()) {
            return Err(Error::invalid(H, "shape", "value out of range"));
        }
        if CMap::new(dom.obj().clone(), cod.obj().clone(), f0.clone()).is_err() {
            return Err(Error::invalid(H, "f0 continuous", "object map not monotone"));
        }
        if CMap::new(dom.arr().clone(), cod.arr().clone(), f1.clone()).is_err() {
            return Err(Error::invalid(H, "f1 continuous", "arrow map not monotone"));
        }
        let name = |a: usize| dom.arr().point(a).to_string();
        for a in 0..dom.n_arr() {
            if cod.s(f1[a]) != f0[dom.s(a)] || cod.t(f1[a]) != f0[dom.t(a)] {
                return Err(Error::invalid(H, "commutes with s and t", name(a)));
            }
        }
        for x in 0..dom.n_obj() {
            if f1[dom.unit(x)] != cod.unit(f0[x]) {
                return Err(Error::invalid(H, "preserves units", dom.obj().point(x).to_string()));
            }
        }
        for ((g, h), gh) in dom.composable_pairs() {
            if f1[gh] != cod.compose(f1[g], f1[h]) {
                return Err(Error::invalid(H, "preserves composition", format!("{} ∘ {}", name(g), name(h))));
            }
        }
        Ok(GroupoidHom { dom, cod, f0, f1 })
    }

    pub fn from_points(
        dom: Arc<FinGroupoid>,
        cod: Arc<FinGroupoid>,
        obj: &[(Point, Point)],
        arr: &[(Point, Point)],
    ) -> Result<GroupoidHom> {
        let f0 = CMap::from_points(dom.obj().clone(), cod.obj().clone(), obj)
            .map_err(|e| relabel(e, "f0 continuous"))?
            .map()
            .to_vec();
        let f1 = CMap::from_points(dom.arr().clone(), cod.arr().clone(), arr)
            .map_err(|e| relabel(e, "f1 continuous"))?
            .map()
            .to_vec();
        GroupoidHom::new(dom, cod, f0, f1)
    }

    pub fn identity(g: &Arc<FinGroupoid>) -> GroupoidHom {
        GroupoidHom { dom: g.clone(), cod: g.clone(), f0: (0..g.n_obj()).collect(), f1: (0..g.n_arr()).collect() }
    }

    /// Builds without validation; the caller guarantees functoriality.
    pub(crate) fn trusted(dom: Arc<FinGroupoid>, cod: Arc<FinGroupoid>, f0: Vec<usize>, f1: Vec<usize>) -> GroupoidHom {
        debug_assert!(GroupoidHom::new(dom.clone(), cod.clone(), f0.clone(), f1.clone()).is_ok());
        GroupoidHom { dom, cod, f0, f1 }
    }

    pub fn dom(&self) -> &Arc<FinGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinGroupoid> {
        &self.cod
    }

    pub fn on_obj(&self) -> &[usize] {
        &self.f0
    }

    pub fn on_arr(&self) -> &[usize] {
        &self.f1
    }

    pub fn f0(&self, x: usize) -> usize {
        self.f0[x]
    }

    pub fn f1(&self, a: usize) -> usize {
        self.f1[a]
    }

    pub fn obj_map(&self) -> CMap {
        CMap::new_unchecked(self.dom.obj().clone(), self.cod.obj().clone(), self.f0.clone())
    }

    pub fn arr_map(&self) -> CMap {
        CMap::new_unchecked(self.dom.arr().clone(), self.cod.arr().clone(), self.f1.clone())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupoidHom) -> Result<GroupoidHom> {
        if *self.cod != *next.dom {
            return Err(Error::Mismatch("composing homs through different groupoids".into()));
        }
        Ok(GroupoidHom {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            f0: self.f0.iter().map(|&x| next.f0[x]).collect(),
            f1: self.f1.iter().map(|&a| next.f1[a]).collect(),
        })
    }

    pub fn has_etale_components(&self) -> bool {
        self.obj_map().is_etale() && self.arr_map().is_etale()
    }

    pub fn has_open_components(&self) -> bool {
        self.obj_map().is_open_map() && self.arr_map().is_open_map()
    }

    /// Internal fullness: every `k: f(x) → f(y)` is `f(g)` for some `g: x → y`.
    pub fn is_full(&self) -> bool {
        self.fullness_failure().is_none()
    }

    pub fn fullness_failure(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.dom.n_obj() {
            for y in 0..self.dom.n_obj() {
                let hit: Vec<usize> = self.dom.hom(x, y).iter().map(|&g| self.f1[g]).collect();
                for k in self.cod.hom(self.f0[x], self.f0[y]) {
                    if !hit.contains(&k) {
                        return Some((x, y, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_isomorphism(&self) -> bool {
        self.obj_map().is_homeomorphism() && self.arr_map().is_homeomorphism()
    }
}

fn relabel(e: Error, law: &'static str) -> Error {
    match e {
        Error::Invalid { detail, .. } => Error::invalid(H, law, detail),
        other => other,
    }
}

/// A continuous natural transformation `src ⇒ dst`.
#[derive(Clone, PartialEq)]
pub struct NatTrans {
    src: GroupoidHom,
    dst: GroupoidHom,
    comp: Vec<usize>,
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dom = self.src.dom.obj();
        let arr = self.src.cod.arr();
        let parts: Vec<String> =
            self.comp.iter().enumerate().map(|(x, &a)| format!("{}:{}", dom.point(x), arr.point(a))).collect();
        write!(f, "NatTrans[{}]", parts.join(" "))
    }
}

const N: &str = "NatTrans";

impl NatTrans {
    pub fn new(src: GroupoidHom, dst: GroupoidHom, comp: Vec<usize>) -> Result<NatTrans> {
        if *src.dom != *dst.dom || *src.cod != *dst.cod {
            return Err(Error::invalid(N, "parallel", "endpoints are not parallel homs"));
        }
        let (dom, cod) = (&src.dom, &src.cod);
        if comp.len() != dom.n_obj() || comp.iter().any(|&a| a >= cod.n_arr()) {
            return Err(Error::invalid(N, "shape", "one component per object"));
        }
        if CMap::new(dom.obj().clone(), cod.arr().clone(), comp.clone()).is_err() {
            return Err(Error::invalid(N, "component continuous", "component map not monotone"));
        }
        for x in 0..dom.n_obj() {
            if cod.s(comp[x]) != src.f0[x] || cod.t(comp[x]) != dst.f0[x] {
                return Err(Error::invalid(N, "component endpoints", dom.obj().point(x).to_string()));
            }
        }
        for g in 0..dom.n_arr() {
            let left = cod.compose(comp[dom.t(g)], src.f1[g]);
            let right = cod.compose(dst.f1[g], comp[dom.s(g)]);
            if left != right {
                return Err(Error::invalid(N, "naturality", dom.arr().point(g).to_string()));
            }
        }
        Ok(NatTrans { src, dst, comp })
    }

    pub fn identity(f: &GroupoidHom) -> NatTrans {
        let comp = f.f0.iter().map(|&y| f.cod.unit(y)).collect();
        NatTrans { src: f.clone(), dst: f.clone(), comp }
    }

    pub fn src(&self) -> &GroupoidHom {
        &self.src
    }

    pub fn dst(&self) -> &GroupoidHom {
        &self.dst
    }

    pub fn components(&self) -> &[usize] {
        &self.comp
    }

    pub fn at(&self, x: usize) -> usize {
        self.comp[x]
    }

    /// `next · self`, a transformation `self.src ⇒ next.dst`.
    pub fn vertical(&self, next: &NatTrans) -> Result<NatTrans> {
        if self.dst != next.src {
            return Err(Error::Mismatch("vertical composite of non-adjacent transformations".into()));
        }
        let cod = &self.src.cod;
        let comp = self.comp.iter().zip(&next.comp).map(|(&a, &b)| cod.compose(b, a)).collect();
        Ok(NatTrans { src: self.src.clone(), dst: next.dst.clone(), comp })
    }

    pub fn inverse(&self) -> NatTrans {
        let cod = &self.src.cod;
        NatTrans { src: self.dst.clone(), dst: self.src.clone(), comp: self.comp.iter().map(|&a| cod.inv(a)).collect() }
    }

    /// `k ∘ self`, a transformation `k∘src ⇒ k∘dst`.
    pub fn post(&self, k: &GroupoidHom) -> Result<NatTrans> {
        let src = self.src.then(k)?;
        let dst = self.dst.then(k)?;
        Ok(NatTrans { src, dst, comp: self.comp.iter().map(|&a| k.f1[a]).collect() })
    }

    /// `self ∘ h`, a transformation `src∘h ⇒ dst∘h`.
    pub fn pre(&self, h: &GroupoidHom) -> Result<NatTrans> {
        let src = h.then(&self.src)?;
        let dst = h.then(&self.dst)?;
        Ok(NatTrans { src, dst, comp: h.f0.iter().map(|&x| self.comp[x]).collect() })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.comp.iter().zip(&self.src.f0).all(|(&a, &y)| self.src.cod.unit(y) == a)
    }
}

/// A groupoid over a base, `structure: total → base`.
#[derive(Clone, PartialEq, Debug)]
pub struct OverGroupoid {
    structure: GroupoidHom,
}

impl OverGroupoid {
    pub fn new(structure: GroupoidHom) -> OverGroupoid {
        OverGroupoid { structure }
    }

    pub fn structure(&self) -> &GroupoidHom {
        &self.structure
    }

    pub fn total(&self) -> &Arc<FinGroupoid> {
        &self.structure.dom
    }

    pub fn base(&self) -> &Arc<FinGroupoid> {
        &self.structure.cod
    }

    pub fn is_etale(&self) -> bool {
        self.structure.has_etale_components()
    }

    pub fn identity(base: &Arc<FinGroupoid>) -> OverGroupoid {
        OverGroupoid { structure: GroupoidHom::identity(base) }
    }
}

/// A 1-cell `(f, α)` of the slice over a base: `f: src.total → dst.total`
/// with `α: src.structure ⇒ dst.structure ∘ f`.
#[derive(Clone, PartialEq, Debug)]
pub struct SliceCell {
    src: OverGroupoid,
    dst: OverGroupoid,
    map: GroupoidHom,
    alpha: NatTrans,
}

const S: &str = "SliceCell";

impl SliceCell {
    pub fn new(src: OverGroupoid, dst: OverGroupoid, map: GroupoidHom, alpha: NatTrans) -> Result<SliceCell> {
        if *src.base() != *dst.base() {
            return Err(Error::invalid(S, "common base", "slice cell between different bases"));
        }
        if *map.dom != **src.total() || *map.cod != **dst.total() {
            return Err(Error::invalid(S, "map endpoints", "map does not run between the totals"));
        }
        if alpha.src != src.structure {
            return Err(Error::invalid(S, "alpha source", "alpha must start at the source structure map"));
        }
        if alpha.dst != map.then(&dst.structure)? {
            return Err(Error::invalid(S, "alpha target", "alpha must end at structure ∘ map"));
        }
        Ok(SliceCell { src, dst, map, alpha })
    }

    /// A cell whose triangle commutes strictly.
    pub fn strict(src: OverGroupoid, dst: OverGroupoid, map: GroupoidHom) -> Result<SliceCell> {
        let alpha = NatTrans::identity(&src.structure);
        SliceCell::new(src, dst, map, alpha)
    }

    pub fn identity(over: &OverGroupoid) -> SliceCell {
        SliceCell {
            src: over.clone(),
            dst: over.clone(),
            map: GroupoidHom::identity(over.total()),
            alpha: NatTrans::identity(&over.structure),
        }
    }

    pub fn src(&self) -> &OverGroupoid {
        &self.src
    }

    pub fn dst(&self) -> &OverGroupoid {
        &self.dst
    }

    pub fn map(&self) -> &GroupoidHom {
        &self.map
    }

    pub fn alpha(&self) -> &NatTrans {
        &self.alpha
    }

    /// `next ∘ self = (f' f, α' f · α)`.
    pub fn then(&self, next: &SliceCell) -> Result<SliceCell> {
        if self.dst != next.src {
            return Err(Error::Mismatch("slice cells not composable".into()));
        }
        let map = self.map.then(&next.map)?;
        let alpha = self.alpha.vertical(&next.alpha.pre(&self.map)?)?;
        SliceCell::new(self.src.clone(), next.dst.clone(), map, alpha)
    }
}

/// A 2-cell `ω: (f, α) ⇒ (f', α')` of the slice: `ω: f ⇒ f'` with
/// `ψω · α = α'` where `ψ` is the target structure map.
#[derive(Clone, PartialEq, Debug)]
pub struct SliceTwoCell {
    src: SliceCell,
    dst: SliceCell,
    omega: NatTrans,
}

impl SliceTwoCell {
    pub fn new(src: SliceCell, dst: SliceCell, omega: NatTrans) -> Result<SliceTwoCell> {
        const T: &str = "SliceTwoCell";
        if src.src != dst.src || src.dst != dst.dst {
            return Err(Error::invalid(T, "parallel", "cells are not parallel"));
        }
        if omega.src != src.map || omega.dst != dst.map {
            return Err(Error::invalid(T, "omega endpoints", "omega must run between the maps"));
        }
        let lhs = src.alpha.vertical(&omega.post(&src.dst.structure)?)?;
        if lhs != dst.alpha {
            return Err(Error::invalid(T, "triangle", "ψω · α differs from α'"));
        }
        Ok(SliceTwoCell { src, dst, omega })
    }

    pub fn src(&self) -> &SliceCell {
        &self.src
    }

    pub fn dst(&self) -> &SliceCell {
        &self.dst
    }

    pub fn omega(&self) -> &NatTrans {
        &self.omega
    }
}

/// Homs both ways with unit and counit transformations
/// `eta: backward∘forward ⇒ id` and `eps: forward∘backward ⇒ id`.
#[derive(Clone, Debug)]
pub struct EquivalencePackage {
    pub forward: GroupoidHom,
    pub backward: GroupoidHom,
    pub eta: NatTrans,
    pub eps: NatTrans,
    /// The legs and transformations as slice cells, when both sides live over a base.
    pub over: Option<OverPackage>,
}

#[derive(Clone, Debug)]
pub struct OverPackage {
    pub forward: SliceCell,
    pub backward: SliceCell,
    pub eta: SliceTwoCell,
    pub eps: SliceTwoCell,
}

impl EquivalencePackage {
    pub fn new(forward: GroupoidHom, backward: GroupoidHom, eta: NatTrans, eps: NatTrans) -> Result<EquivalencePackage> {
        const P: &str = "EquivalencePackage";
        let bf = forward.then(&backward)?;
        let fb = backward.then(&forward)?;
        if eta.src != bf || eta.dst != GroupoidHom::identity(forward.dom()) {
            return Err(Error::invalid(P, "eta endpoints", "eta must run backward∘forward ⇒ id"));
        }
        if eps.src != fb || eps.dst != GroupoidHom::identity(forward.cod()) {
            return Err(Error::invalid(P, "eps endpoints", "eps must run forward∘backward ⇒ id"));
        }
        Ok(EquivalencePackage { forward, backward, eta, eps, over: None })
    }

    /// Attaches slice data and checks it matches the plain package.
    pub fn with_over(mut self, over: OverPackage) -> Result<EquivalencePackage> {
        const P: &str = "EquivalencePackage";
        if over.forward.map != self.forward || over.backward.map != self.backward {
            return Err(Error::invalid(P, "over legs", "slice legs differ from the plain legs"));
        }
        if over.eta.omega != self.eta || over.eps.omega != self.eps {
            return Err(Error::invalid(P, "over 2-cells", "slice 2-cells differ from the plain ones"));
        }
        let bf = over.forward.then(&over.backward)?;
        let fb = over.backward.then(&over.forward)?;
        if over.eta.src != bf || over.eta.dst != SliceCell::identity(&over.forward.src) {
            return Err(Error::invalid(P, "over eta endpoints", "eta is not a 2-cell backward∘forward ⇒ id"));
        }
        if over.eps.src != fb || over.eps.dst != SliceCell::identity(&over.forward.dst) {
            return Err(Error::invalid(P, "over eps endpoints", "eps is not a 2-cell forward∘backward ⇒ id"));
        }
        self.over = Some(over);
        Ok(self)
    }

    /// Strict inverse pair: both composites are identities.
    pub fn is_isomorphism(&self) -> bool {
        self.eta.is_identity() && self.eps.is_identity()
    }
}
