//! Groupoids internal to finite spaces.
//!
//! Composition follows `m(g, h) = g ∘ h`, defined when `s(g) = t(h)`. The
//! composable pairs carry the componentwise order of the fibered product of
//! `s` and `t`.

mod cech;
mod hom;
mod morita;
mod pullback;

pub(crate) use cech::cech_along;
pub use cech::{cech_groupoid, CechGroupoid};
pub use hom::{EquivalencePackage, GroupoidHom, NatTrans, OverGroupoid, OverPackage, SliceCell, SliceTwoCell};
pub use morita::{
    is_abstract_equivalence, is_equivalent_to_space, is_morita_equivalence, MoritaCertificate, SpaceQuotient,
};
pub use pullback::{pullback_arrow_count, weak_pullback, WeakPullback, MAX_PULLBACK_ARROWS};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fintop::{CMap, FinSpace, TupleSpace};
use crate::group::FinGroup;
use crate::point::Point;

#[derive(Clone)]
pub struct FinGroupoid {
    obj: Arc<FinSpace>,
    arr: Arc<FinSpace>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    unit: Vec<usize>,
    inv: Vec<usize>,
    /// `comp[g][pos[h]] = g ∘ h` for `h` into `s(g)`.
    comp: Vec<Vec<usize>>,
    pos: Vec<usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl PartialEq for FinGroupoid {
    fn eq(&self, other: &FinGroupoid) -> bool {
        std::ptr::eq(self, other)
            || (*self.obj == *other.obj
                && *self.arr == *other.arr
                && self.src == other.src
                && self.tgt == other.tgt
                && self.unit == other.unit
                && self.inv == other.inv
                && self.comp == other.comp)
    }
}

impl Eq for FinGroupoid {}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroupoid({} objects, {} arrows)", self.obj.len(), self.arr.len())
    }
}

/// The structure maps of a groupoid, before validation.
pub struct GroupoidParts<C> {
    pub obj: Arc<FinSpace>,
    pub arr: Arc<FinSpace>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub unit: Vec<usize>,
    pub inv: Vec<usize>,
    /// Called on every composable pair `(g, h)`; returns `g ∘ h`.
    pub comp: C,
}

const G: &str = "FinGroupoid";

impl FinGroupoid {
    pub fn new<C: FnMut(usize, usize) -> Option<usize>>(parts: GroupoidParts<C>) -> Result<FinGroupoid> {
        let groupoid = FinGroupoid::assemble(parts)?;
        groupoid.validate()?;
        Ok(groupoid)
    }

    /// Builds the tables without checking the groupoid laws; for constructions
    /// that satisfy them by design.
    pub(crate) fn assemble<C: FnMut(usize, usize) -> Option<usize>>(parts: GroupoidParts<C>) -> Result<FinGroupoid> {
        let GroupoidParts { obj, arr, src, tgt, unit, inv, mut comp } = parts;
        let (n0, n1) = (obj.len(), arr.len());
        if src.len() != n1 || tgt.len() != n1 || inv.len() != n1 || unit.len() != n0 {
            return Err(Error::invalid(G, "shape", "structure maps have the wrong length"));
        }
        if src.iter().chain(&tgt).any(|&x| x >= n0) || unit.iter().chain(&inv).any(|&a| a >= n1) {
            return Err(Error::invalid(G, "shape", "structure map value out of range"));
        }
        let mut out = vec![Vec::new(); n0];
        let mut inc = vec![Vec::new(); n0];
        for a in 0..n1 {
            out[src[a]].push(a);
            inc[tgt[a]].push(a);
        }
        let mut pos = vec![0; n1];
        for list in &inc {
            for (i, &h) in list.iter().enumerate() {
                pos[h] = i;
            }
        }
        let mut comp_table = Vec::with_capacity(n1);
        for g in 0..n1 {
            let row = inc[src[g]]
                .iter()
                .map(|&h| {
                    comp(g, h).filter(|&c| c < n1).ok_or_else(|| {
                        Error::invalid(G, "composition closed", format!("{} ∘ {}", arr.point(g), arr.point(h)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            comp_table.push(row);
        }
        Ok(FinGroupoid { obj, arr, src, tgt, unit, inv, comp: comp_table, pos, out, inc })
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let name = |a: usize| self.arr.point(a).to_string();
        for (law, dom, cod, map) in [
            ("s continuous", &self.arr, &self.obj, &self.src),
            ("t continuous", &self.arr, &self.obj, &self.tgt),
            ("unit continuous", &self.obj, &self.arr, &self.unit),
            ("inv continuous", &self.arr, &self.arr, &self.inv),
        ] {
            if CMap::new(dom.clone(), cod.clone(), map.clone()).is_err() {
                return Err(Error::invalid(G, law, "structure map not monotone"));
            }
        }
        for x in 0..self.obj.len() {
            if self.src[self.unit[x]] != x || self.tgt[self.unit[x]] != x {
                return Err(Error::invalid(G, "s(1_x) = x = t(1_x)", self.obj.point(x).to_string()));
            }
        }
        for a in 0..self.arr.len() {
            let i = self.inv[a];
            if self.src[i] != self.tgt[a] || self.tgt[i] != self.src[a] {
                return Err(Error::invalid(G, "s(g^-1) = t(g)", name(a)));
            }
        }
        for ((g, h), gh) in self.composable_pairs() {
            if self.src[gh] != self.src[h] || self.tgt[gh] != self.tgt[g] {
                return Err(Error::invalid(G, "s(gh) = s(h), t(gh) = t(g)", format!("{} ∘ {}", name(g), name(h))));
            }
        }
        for a in 0..self.arr.len() {
            if self.c(a, self.unit[self.src[a]]) != a || self.c(self.unit[self.tgt[a]], a) != a {
                return Err(Error::invalid(G, "unit law", name(a)));
            }
            if self.c(a, self.inv[a]) != self.unit[self.tgt[a]] || self.c(self.inv[a], a) != self.unit[self.src[a]]
            {
                return Err(Error::invalid(G, "inverse law", name(a)));
            }
        }
        for ((g, h), gh) in self.composable_pairs() {
            for &k in &self.inc[self.src[h]] {
                if self.c(gh, k) != self.c(g, self.c(h, k)) {
                    return Err(Error::invalid(
                        G,
                        "associativity",
                        format!("({} ∘ {}) ∘ {}", name(g), name(h), name(k)),
                    ));
                }
            }
        }
        for ((g, h), gh) in self.composable_pairs() {
            for &g2 in self.arr.down(g) {
                for &h2 in self.arr.down(h) {
                    if let Some(c) = self.try_compose(g2, h2) {
                        if !self.arr.leq(c, gh) {
                            return Err(Error::invalid(
                                G,
                                "m continuous",
                                format!("({}, {}) <= ({}, {})", name(g2), name(h2), name(g), name(h)),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Loads a groupoid from point-level tables.
    pub fn from_points(
        obj: Arc<FinSpace>,
        arr: Arc<FinSpace>,
        s: &[(Point, Point)],
        t: &[(Point, Point)],
        unit: &[(Point, Point)],
        inv: &[(Point, Point)],
        compose: &[(Point, Point, Point)],
    ) -> Result<FinGroupoid> {
        let table = |dom: &FinSpace, cod: &FinSpace, pairs: &[(Point, Point)], what: &str| -> Result<Vec<usize>> {
            let mut v = vec![usize::MAX; dom.len()];
            for (p, q) in pairs {
                v[dom.idx(p)?] = cod.idx(q)?;
            }
            if let Some(i) = v.iter().position(|&x| x == usize::MAX) {
                return Err(Error::invalid(G, "shape", format!("{what} undefined at {}", dom.point(i))));
            }
            Ok(v)
        };
        let src = table(&arr, &obj, s, "s")?;
        let tgt = table(&arr, &obj, t, "t")?;
        let unit = table(&obj, &arr, unit, "unit")?;
        let inv = table(&arr, &arr, inv, "inv")?;
        let mut comp = HashMap::new();
        for (g, h, gh) in compose {
            comp.insert((arr.idx(g)?, arr.idx(h)?), arr.idx(gh)?);
        }
        let extra = comp.keys().find(|&&(g, h)| src[g] != tgt[h]).copied();
        if let Some((g, h)) = extra {
            return Err(Error::invalid(
                G,
                "composition domain",
                format!("{} ∘ {} listed but not composable", arr.point(g), arr.point(h)),
            ));
        }
        FinGroupoid::new(GroupoidParts { obj, arr, src, tgt, unit, inv, comp: |g, h| comp.get(&(g, h)).copied() })
    }

    /// Only identity arrows; arrow points coincide with object points.
    pub fn unit_groupoid(space: &Arc<FinSpace>) -> FinGroupoid {
        let n = space.len();
        let id: Vec<usize> = (0..n).collect();
        FinGroupoid::new(GroupoidParts {
            obj: space.clone(),
            arr: space.clone(),
            src: id.clone(),
            tgt: id.clone(),
            unit: id.clone(),
            inv: id,
            comp: |g, h| (g == h).then_some(g),
        })
        .expect("unit groupoid")
    }

    /// One object `*` with the group as discrete arrow space.
    pub fn delooping(group: &FinGroup) -> FinGroupoid {
        let obj = Arc::new(FinSpace::discrete(vec![Point::atom("*")]).expect("point"));
        let arr = Arc::new(FinSpace::discrete(group.elements().to_vec()).expect("group elements distinct"));
        let pos: Vec<usize> = group.elements().iter().map(|p| arr.idx(p).expect("element")).collect();
        let back: HashMap<usize, usize> = pos.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let n = group.order();
        FinGroupoid::new(GroupoidParts {
            obj,
            arr,
            src: vec![0; n],
            tgt: vec![0; n],
            unit: vec![pos[group.identity()]],
            inv: (0..n).map(|a| pos[group.inverse(back[&a])]).collect(),
            comp: |g, h| Some(pos[group.mul(back[&g], back[&h])]),
        })
        .expect("delooping of a group")
    }

    /// Action groupoid of a group acting on a space by homeomorphisms:
    /// arrows `(γ, x): x → γx`, ordered componentwise.
    pub fn group_action(group: &FinGroup, space: &Arc<FinSpace>, act: &[Vec<usize>]) -> Result<FinGroupoid> {
        let elements = Arc::new(FinSpace::discrete(group.elements().to_vec())?);
        let gpos: Vec<usize> = group.elements().iter().map(|p| elements.idx(p).expect("element")).collect();
        let ts = TupleSpace::build(
            &[&elements, space],
            (0..group.order()).flat_map(|g| (0..space.len()).map(move |x| vec![g, x])),
        );
        let gback: HashMap<usize, usize> = gpos.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let n1 = ts.len();
        let gi = |a: usize| gback[&ts.comp(a, 0)];
        let arrow = |g: usize, x: usize| ts.find(&[gpos[g], x]).expect("arrow");
        let src: Vec<usize> = (0..n1).map(|a| ts.comp(a, 1)).collect();
        let tgt: Vec<usize> = (0..n1).map(|a| act[gi(a)][ts.comp(a, 1)]).collect();
        let unit = (0..space.len()).map(|x| arrow(group.identity(), x)).collect();
        let inv = (0..n1).map(|a| arrow(group.inverse(gi(a)), tgt[a])).collect();
        FinGroupoid::new(GroupoidParts {
            obj: space.clone(),
            arr: ts.space().clone(),
            src: src.clone(),
            tgt,
            unit,
            inv,
            comp: |g, h| Some(arrow(group.mul(gi(g), gi(h)), src[h])),
        })
    }

    /// Disjoint union; points become `(tag, p)`.
    pub fn disjoint_union(parts: &[(&str, &FinGroupoid)]) -> Result<FinGroupoid> {
        let tag_space = |spaces: Vec<&FinSpace>| -> (FinSpace, Vec<usize>) {
            let mut points = Vec::new();
            let mut down = Vec::new();
            for ((tag, _), sp) in parts.iter().zip(spaces) {
                let off = points.len();
                for i in 0..sp.len() {
                    points.push(Point::pair(Point::atom(tag), sp.point(i).clone()));
                    down.push(sp.down(i).iter().map(|&p| p + off).collect());
                }
            }
            FinSpace::from_down_sets(points, down).expect("disjoint union of preorders")
        };
        let (obj, operm) = tag_space(parts.iter().map(|(_, g)| &*g.obj).collect());
        let (arr, aperm) = tag_space(parts.iter().map(|(_, g)| &*g.arr).collect());
        let mut src = vec![0; arr.len()];
        let mut tgt = vec![0; arr.len()];
        let mut inv = vec![0; arr.len()];
        let mut unit = vec![0; obj.len()];
        let mut comp = HashMap::new();
        let (mut o_off, mut a_off) = (0, 0);
        for (_, g) in parts {
            let o = |x: usize| operm[x + o_off];
            let a = |x: usize| aperm[x + a_off];
            for x in 0..g.arr.len() {
                src[a(x)] = o(g.src[x]);
                tgt[a(x)] = o(g.tgt[x]);
                inv[a(x)] = a(g.inv[x]);
            }
            for x in 0..g.obj.len() {
                unit[o(x)] = a(g.unit[x]);
            }
            for ((p, q), r) in g.composable_pairs() {
                comp.insert((a(p), a(q)), a(r));
            }
            o_off += g.obj.len();
            a_off += g.arr.len();
        }
        FinGroupoid::new(GroupoidParts {
            obj: Arc::new(obj),
            arr: Arc::new(arr),
            src,
            tgt,
            unit,
            inv,
            comp: |g, h| comp.get(&(g, h)).copied(),
        })
    }

    pub fn obj(&self) -> &Arc<FinSpace> {
        &self.obj
    }

    pub fn arr(&self) -> &Arc<FinSpace> {
        &self.arr
    }

    pub fn n_obj(&self) -> usize {
        self.obj.len()
    }

    pub fn n_arr(&self) -> usize {
        self.arr.len()
    }

    pub fn s(&self, a: usize) -> usize {
        self.src[a]
    }

    pub fn t(&self, a: usize) -> usize {
        self.tgt[a]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g ∘ h`; panics unless `s(g) = t(h)`.
    pub fn compose(&self, g: usize, h: usize) -> usize {
        match self.try_compose(g, h) {
            Some(c) => c,
            None => panic!("{} ∘ {} not composable", self.arr.point(g), self.arr.point(h)),
        }
    }

    pub fn try_compose(&self, g: usize, h: usize) -> Option<usize> {
        (self.src[g] == self.tgt[h]).then(|| self.c(g, h))
    }

    fn c(&self, g: usize, h: usize) -> usize {
        self.comp[g][self.pos[h]]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit[self.src[a]] == a
    }

    pub fn arrows_from(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    pub fn arrows_to(&self, y: usize) -> &[usize] {
        &self.inc[y]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.out[x].iter().copied().filter(|&a| self.tgt[a] == y).collect()
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.comp.iter().enumerate().flat_map(move |(g, row)| {
            self.inc[self.src[g]].iter().zip(row).map(move |(&h, &gh)| ((g, h), gh))
        })
    }

    pub fn s_map(&self) -> CMap {
        CMap::new_unchecked(self.arr.clone(), self.obj.clone(), self.src.clone())
    }

    pub fn t_map(&self) -> CMap {
        CMap::new_unchecked(self.arr.clone(), self.obj.clone(), self.tgt.clone())
    }

    pub fn unit_map(&self) -> CMap {
        CMap::new_unchecked(self.obj.clone(), self.arr.clone(), self.unit.clone())
    }

    pub fn inv_map(&self) -> CMap {
        CMap::new_unchecked(self.arr.clone(), self.arr.clone(), self.inv.clone())
    }

    pub fn src_table(&self) -> &[usize] {
        &self.src
    }

    pub fn tgt_table(&self) -> &[usize] {
        &self.tgt
    }

    pub fn obj_idx(&self, p: &Point) -> Result<usize> {
        self.obj.idx(p)
    }

    pub fn arr_idx(&self, p: &Point) -> Result<usize> {
        self.arr.idx(p)
    }

    /// Étale iff `s` is a local homeomorphism; `t` is checked too.
    pub fn is_etale(&self) -> bool {
        let s = self.s_map().is_etale();
        if s {
            debug_assert!(self.t_map().is_etale(), "t = s ∘ inv must be étale with s");
        }
        s
    }

    pub fn isotropy(&self, x: usize) -> Vec<usize> {
        self.hom(x, x)
    }

    pub fn isotropy_group(&self, x: usize) -> FinGroup {
        self.subgroup_at(x, &self.isotropy(x))
    }

    /// Group on a set of endomorphisms of `x` closed under composition.
    pub fn subgroup_at(&self, x: usize, members: &[usize]) -> FinGroup {
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let elements = members.iter().map(|&a| self.arr.point(a).clone()).collect();
        let mul = members.iter().map(|&a| members.iter().map(|&b| pos[&self.compose(a, b)]).collect()).collect();
        debug_assert!(members.iter().all(|&a| self.src[a] == x && self.tgt[a] == x));
        FinGroup::new(elements, mul).expect("isotropy is a group")
    }

    /// Connected components as sorted object lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp_of = vec![usize::MAX; self.n_obj()];
        let mut out = Vec::new();
        for x in 0..self.n_obj() {
            if comp_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = self.out[x].iter().map(|&a| self.tgt[a]).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                comp_of[y] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// Restriction to an invariant open `U ⊆ G0` (full subgroupoid on `U`).
    pub fn restrict_to(self: &Arc<Self>, objects: &[usize]) -> Result<(Arc<FinGroupoid>, GroupoidHom)> {
        let mut keep = vec![false; self.n_obj()];
        for &x in objects {
            keep[x] = true;
        }
        let arrows: Vec<usize> = (0..self.n_arr()).filter(|&a| keep[self.src[a]] && keep[self.tgt[a]]).collect();
        let (obj, oincl) = self.obj.subspace(objects);
        let (arr, aincl) = self.arr.subspace(&arrows);
        let opos: HashMap<usize, usize> = oincl.map().iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let apos: HashMap<usize, usize> = aincl.map().iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let am = aincl.map().to_vec();
        let om = oincl.map().to_vec();
        let sub = FinGroupoid::new(GroupoidParts {
            obj,
            arr,
            src: am.iter().map(|&a| opos[&self.src[a]]).collect(),
            tgt: am.iter().map(|&a| opos[&self.tgt[a]]).collect(),
            unit: om.iter().map(|&x| apos[&self.unit[x]]).collect(),
            inv: am.iter().map(|&a| apos[&self.inv[a]]).collect(),
            comp: |g, h| apos.get(&self.compose(am[g], am[h])).copied(),
        })?;
        let sub = Arc::new(sub);
        let incl = GroupoidHom::new(sub.clone(), self.clone(), om, am)?;
        Ok((sub, incl))
    }
}
