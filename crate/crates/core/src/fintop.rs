//! Finite topological spaces as specialization preorders.
//!
//! `p <= q` means `p` lies in every open containing `q`. Opens are the
//! down-closed sets and `U_q = { p : p <= q }` is the minimal open of `q`.
//! Continuous maps are exactly the monotone ones.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::point::Point;

#[derive(Clone)]
pub struct FinSpace {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &FinSpace) -> bool {
        std::ptr::eq(self, other) || (self.points == other.points && self.down == other.down)
    }
}

impl Eq for FinSpace {}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .map(|(p, q)| format!("{}<={}", self.points[p], self.points[q]))
            .collect();
        write!(f, "FinSpace({:?}; {})", self.points, pairs.join(" "))
    }
}

impl FinSpace {
    /// Builds a space from points in any order and their minimal opens
    /// (indices into the given order). Returns the space, whose points are
    /// sorted, and the permutation from input position to sorted position.
    pub fn from_down_sets(points: Vec<Point>, down: Vec<Vec<usize>>) -> Result<(FinSpace, Vec<usize>)> {
        let n = points.len();
        if down.len() != n {
            return Err(Error::invalid("FinSpace", "shape", "one minimal open per point"));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        let mut perm = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let sorted: Vec<Point> = order.iter().map(|&i| points[i].clone()).collect();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid("FinSpace", "distinct points", format!("{} repeated", w[0])));
            }
        }
        let mut new_down = vec![Vec::new(); n];
        for (old, d) in down.into_iter().enumerate() {
            let mut v: Vec<usize> = d.into_iter().map(|i| perm[i]).collect();
            v.sort_unstable();
            v.dedup();
            new_down[perm[old]] = v;
        }
        let space = FinSpace::assemble(sorted, new_down);
        space.check_preorder()?;
        Ok((space, perm))
    }

    /// Reflexive-transitive closure of a relation given by index pairs `(p, q)` meaning `p <= q`.
    pub fn from_relation(points: Vec<Point>, pairs: &[(usize, usize)]) -> Result<(FinSpace, Vec<usize>)> {
        let n = points.len();
        let mut below = vec![Vec::new(); n];
        for &(p, q) in pairs {
            if p >= n || q >= n {
                return Err(Error::invalid("FinSpace", "shape", "relation index out of range"));
            }
            below[q].push(p);
        }
        let down = (0..n)
            .map(|q| {
                let mut seen = vec![false; n];
                let mut stack = vec![q];
                seen[q] = true;
                while let Some(x) = stack.pop() {
                    for &y in &below[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                (0..n).filter(|&i| seen[i]).collect()
            })
            .collect();
        FinSpace::from_down_sets(points, down)
    }

    pub fn discrete(points: Vec<Point>) -> Result<FinSpace> {
        let n = points.len();
        Ok(FinSpace::from_down_sets(points, (0..n).map(|i| vec![i]).collect())?.0)
    }

    /// The one-point space `{*}`.
    pub fn singleton() -> FinSpace {
        FinSpace::discrete(vec![Point::atom("*")]).expect("one point")
    }

    /// `{o, c}` with `o ≤ c`: `{o}` is open, `c` is closed.
    pub fn sierpinski() -> FinSpace {
        FinSpace::from_points(vec![Point::atom("o"), Point::atom("c")], &[(Point::atom("o"), Point::atom("c"))])
            .expect("two-point chain")
    }

    /// Space from named points and `(p, q)` pairs meaning `p <= q`, closed
    /// reflexively and transitively.
    pub fn from_points(points: Vec<Point>, leq: &[(Point, Point)]) -> Result<FinSpace> {
        let index: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut pairs = Vec::with_capacity(leq.len());
        for (p, q) in leq {
            let a = *index.get(p).ok_or_else(|| Error::UnknownPoint(p.to_string()))?;
            let b = *index.get(q).ok_or_else(|| Error::UnknownPoint(q.to_string()))?;
            pairs.push((a, b));
        }
        Ok(FinSpace::from_relation(points, &pairs)?.0)
    }

    fn assemble(points: Vec<Point>, down: Vec<Vec<usize>>) -> FinSpace {
        let n = points.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let mut up = vec![Vec::new(); n];
        for (q, d) in down.iter().enumerate() {
            for &p in d {
                bits[p * words + q / 64] |= 1 << (q % 64);
                up[p].push(q);
            }
        }
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        FinSpace { points, index, down, up, words, bits }
    }

    fn check_preorder(&self) -> Result<()> {
        for q in 0..self.len() {
            if self.down[q].binary_search(&q).is_err() {
                return Err(Error::invalid("FinSpace", "reflexivity", self.points[q].to_string()));
            }
            for &p in &self.down[q] {
                for &r in &self.down[p] {
                    if !self.leq(r, q) {
                        return Err(Error::invalid(
                            "FinSpace",
                            "transitivity",
                            format!("{} <= {} <= {}", self.points[r], self.points[p], self.points[q]),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn idx(&self, p: &Point) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::UnknownPoint(p.to_string()))
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.bits[p * self.words + q / 64] >> (q % 64) & 1 == 1
    }

    /// Indices of the minimal open `U_q`, sorted.
    pub fn down(&self, q: usize) -> &[usize] {
        &self.down[q]
    }

    pub fn up(&self, p: usize) -> &[usize] {
        &self.up[p]
    }

    /// Pairs `p <= q` with `p != q`, in canonical order.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |p| self.up[p].iter().filter(move |&&q| q != p).map(move |&q| (p, q)))
    }

    pub fn minimal_open(&self, q: usize) -> OpenSet {
        OpenSet { members: self.down[q].clone() }
    }

    pub fn minimal_open_of(&self, q: &Point) -> Result<OpenSet> {
        Ok(self.minimal_open(self.idx(q)?))
    }

    pub fn is_down_closed(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &i in set {
            member[i] = true;
        }
        set.iter().all(|&q| self.down[q].iter().all(|&p| member[p]))
    }

    pub fn open_set(&self, members: impl IntoIterator<Item = usize>) -> Result<OpenSet> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        let members: Vec<usize> = members.into_iter().collect();
        if members.iter().any(|&i| i >= self.len()) {
            return Err(Error::invalid("OpenSet", "membership", "index out of range"));
        }
        if !self.is_down_closed(&members) {
            return Err(Error::invalid("OpenSet", "down-closed", format!("{:?}", self.names(&members))));
        }
        Ok(OpenSet { members })
    }

    pub fn open_set_of(&self, points: &[Point]) -> Result<OpenSet> {
        let idx = points.iter().map(|p| self.idx(p)).collect::<Result<Vec<_>>>()?;
        self.open_set(idx)
    }

    pub fn whole(&self) -> OpenSet {
        OpenSet { members: (0..self.len()).collect() }
    }

    /// All opens, enumerated as down-sets. Exponential; meant for small spaces.
    pub fn opens(&self) -> Vec<OpenSet> {
        let mut out = Vec::new();
        let mut chosen = vec![false; self.len()];
        self.opens_rec(0, &mut chosen, &mut out);
        out
    }

    fn opens_rec(&self, i: usize, chosen: &mut Vec<bool>, out: &mut Vec<OpenSet>) {
        if i == self.len() {
            let members: Vec<usize> = (0..self.len()).filter(|&j| chosen[j]).collect();
            if self.is_down_closed(&members) {
                out.push(OpenSet { members });
            }
            return;
        }
        chosen[i] = false;
        self.opens_rec(i + 1, chosen, out);
        chosen[i] = true;
        self.opens_rec(i + 1, chosen, out);
        chosen[i] = false;
    }

    pub fn names(&self, idx: &[usize]) -> Vec<Point> {
        idx.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Subspace on the given members, with the inclusion map.
    pub fn subspace(self: &Arc<Self>, members: &[usize]) -> (Arc<FinSpace>, CMap) {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let points = members.iter().map(|&m| self.points[m].clone()).collect();
        let down = members
            .iter()
            .map(|&m| self.down[m].iter().filter_map(|p| pos.get(p).copied()).collect())
            .collect();
        let (sub, perm) = FinSpace::from_down_sets(points, down).expect("subspace of a preorder");
        // points were already sorted, so perm is the identity
        debug_assert!(perm.iter().enumerate().all(|(i, &j)| i == j));
        let sub = Arc::new(sub);
        let incl = CMap { dom: sub.clone(), cod: self.clone(), map: members };
        (sub, incl)
    }

    /// Quotient by a labelling of points; the preorder is the transitive
    /// closure of the image of `<=`. Class `c` gets the point `class_points[c]`.
    pub fn quotient(&self, class_of: &[usize], class_points: Vec<Point>) -> Result<(FinSpace, Vec<usize>)> {
        let mut pairs = Vec::new();
        for (p, q) in self.strict_pairs() {
            pairs.push((class_of[p], class_of[q]));
        }
        FinSpace::from_relation(class_points, &pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenSet {
    members: Vec<usize>,
}

impl OpenSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &OpenSet) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    pub fn names(&self, space: &FinSpace) -> Vec<Point> {
        space.names(&self.members)
    }
}

/// A continuous map between finite spaces, stored by indices.
#[derive(Clone)]
pub struct CMap {
    dom: Arc<FinSpace>,
    cod: Arc<FinSpace>,
    map: Vec<usize>,
}

impl PartialEq for CMap {
    fn eq(&self, other: &CMap) -> bool {
        self.map == other.map && *self.dom == *other.dom && *self.cod == *other.cod
    }
}

impl fmt::Debug for CMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> =
            self.map.iter().enumerate().map(|(i, &j)| format!("{}->{}", self.dom.points[i], self.cod.points[j])).collect();
        write!(f, "CMap[{}]", pairs.join(" "))
    }
}

/// Restrictions of an étale map to minimal opens, one per domain point.
pub type LocalIsos = Vec<Vec<(usize, usize)>>;

impl CMap {
    pub fn new(dom: Arc<FinSpace>, cod: Arc<FinSpace>, map: Vec<usize>) -> Result<CMap> {
        if map.len() != dom.len() || map.iter().any(|&j| j >= cod.len()) {
            return Err(Error::invalid("CMap", "totality", "map does not cover the domain"));
        }
        let f = CMap { dom, cod, map };
        if let Some((p, q)) = f.continuity_failure() {
            return Err(Error::invalid(
                "CMap",
                "continuity",
                format!("{} <= {} but images are not ordered", f.dom.points[p], f.dom.points[q]),
            ));
        }
        Ok(f)
    }

    pub fn from_points(dom: Arc<FinSpace>, cod: Arc<FinSpace>, graph: &[(Point, Point)]) -> Result<CMap> {
        let mut map = vec![usize::MAX; dom.len()];
        for (p, q) in graph {
            map[dom.idx(p)?] = cod.idx(q)?;
        }
        if let Some(i) = map.iter().position(|&j| j == usize::MAX) {
            return Err(Error::invalid("CMap", "totality", format!("no image for {}", dom.points[i])));
        }
        CMap::new(dom, cod, map)
    }

    pub(crate) fn new_unchecked(dom: Arc<FinSpace>, cod: Arc<FinSpace>, map: Vec<usize>) -> CMap {
        debug_assert!(CMap::new(dom.clone(), cod.clone(), map.clone()).is_ok());
        CMap { dom, cod, map }
    }

    pub fn identity(space: &Arc<FinSpace>) -> CMap {
        CMap { dom: space.clone(), cod: space.clone(), map: (0..space.len()).collect() }
    }

    fn continuity_failure(&self) -> Option<(usize, usize)> {
        for q in 0..self.dom.len() {
            for &p in self.dom.down(q) {
                if !self.cod.leq(self.map[p], self.map[q]) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn dom(&self) -> &Arc<FinSpace> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinSpace> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        Ok(self.cod.points[self.map[self.dom.idx(p)?]].clone())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CMap) -> Result<CMap> {
        if *self.cod != *next.dom {
            return Err(Error::Mismatch("composing maps through different spaces".into()));
        }
        Ok(CMap { dom: self.dom.clone(), cod: next.cod.clone(), map: self.map.iter().map(|&i| next.map[i]).collect() })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &j in &self.map {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Bijective with monotone inverse.
    pub fn is_homeomorphism(&self) -> bool {
        if !self.is_injective() || !self.is_surjective() {
            return false;
        }
        (0..self.dom.len())
            .all(|q| (0..self.dom.len()).all(|p| self.dom.leq(p, q) == self.cod.leq(self.map[p], self.map[q])))
    }

    /// Restriction of `self` to `U_p` when it is an order isomorphism onto `U_{f(p)}`.
    pub fn local_iso_at(&self, p: usize) -> Option<Vec<(usize, usize)>> {
        let src = self.dom.down(p);
        let dst = self.cod.down(self.map[p]);
        if src.len() != dst.len() {
            return None;
        }
        let mut hit = BTreeSet::new();
        for &q in src {
            if !hit.insert(self.map[q]) {
                return None;
            }
        }
        for &a in src {
            for &b in src {
                if self.dom.leq(a, b) != self.cod.leq(self.map[a], self.map[b]) {
                    return None;
                }
            }
        }
        Some(src.iter().map(|&q| (q, self.map[q])).collect())
    }

    /// Per-point restrictions witnessing étaleness, or the first point where it fails.
    pub fn etale_certificate(&self) -> std::result::Result<LocalIsos, usize> {
        (0..self.dom.len()).map(|p| self.local_iso_at(p).ok_or(p)).collect()
    }

    pub fn is_etale(&self) -> bool {
        self.etale_certificate().is_ok()
    }

    /// Checked on minimal opens, which suffices since opens are unions of them.
    pub fn is_open_map(&self) -> bool {
        self.open_map_failure().is_none()
    }

    pub fn open_map_failure(&self) -> Option<usize> {
        (0..self.dom.len()).find(|&p| {
            let image: BTreeSet<usize> = self.dom.down(p).iter().map(|&q| self.map[q]).collect();
            let image: Vec<usize> = image.into_iter().collect();
            !self.cod.is_down_closed(&image)
        })
    }
}

/// A subspace of a product with the componentwise order. Points are tuples
/// of the factor points; components are kept as indices for fast lookup.
#[derive(Clone)]
pub struct TupleSpace {
    space: Arc<FinSpace>,
    comps: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl fmt::Debug for TupleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TupleSpace({} tuples)", self.comps.len())
    }
}

impl TupleSpace {
    pub fn build(factors: &[&FinSpace], tuples: impl IntoIterator<Item = Vec<usize>>) -> TupleSpace {
        let mut tuples: Vec<Vec<usize>> = tuples.into_iter().collect();
        tuples.sort_unstable();
        tuples.dedup();
        let points: Vec<Point> =
            tuples.iter().map(|t| Point::tuple(t.iter().zip(factors).map(|(&i, f)| f.point(i).clone()))).collect();
        let mut order: Vec<usize> = (0..tuples.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        let comps: Vec<Vec<usize>> = order.iter().map(|&i| tuples[i].clone()).collect();
        let points: Vec<Point> = order.iter().map(|&i| points[i].clone()).collect();
        let lookup: HashMap<Vec<usize>, usize> = comps.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let down = comps
            .iter()
            .map(|t| {
                let mut out = Vec::new();
                let mut cur = Vec::with_capacity(t.len());
                collect_down(factors, t, &lookup, &mut cur, &mut out);
                out
            })
            .collect();
        let (space, perm) = FinSpace::from_down_sets(points, down).expect("componentwise order is a preorder");
        debug_assert!(perm.iter().enumerate().all(|(i, &j)| i == j));
        TupleSpace { space: Arc::new(space), comps, lookup }
    }

    pub fn space(&self) -> &Arc<FinSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self, i: usize) -> &[usize] {
        &self.comps[i]
    }

    pub fn comp(&self, i: usize, k: usize) -> usize {
        self.comps[i][k]
    }

    pub fn find(&self, t: &[usize]) -> Option<usize> {
        self.lookup.get(t).copied()
    }

    /// Projection onto factor `k` as a continuous map.
    pub fn projection(&self, k: usize, factor: &Arc<FinSpace>) -> CMap {
        CMap::new_unchecked(self.space.clone(), factor.clone(), self.comps.iter().map(|t| t[k]).collect())
    }
}

fn collect_down(
    factors: &[&FinSpace],
    t: &[usize],
    lookup: &HashMap<Vec<usize>, usize>,
    cur: &mut Vec<usize>,
    out: &mut Vec<usize>,
) {
    let k = cur.len();
    if k == t.len() {
        if let Some(&i) = lookup.get(cur.as_slice()) {
            out.push(i);
        }
        return;
    }
    for &p in factors[k].down(t[k]) {
        cur.push(p);
        collect_down(factors, t, lookup, cur, out);
        cur.pop();
    }
}

pub struct FiberedProduct {
    pub space: TupleSpace,
    pub pr1: CMap,
    pub pr2: CMap,
}

/// `{ (x, y) : f(x) = g(y) }` with the componentwise order.
pub fn fibered_product(f: &CMap, g: &CMap) -> Result<FiberedProduct> {
    if *f.cod != *g.cod {
        return Err(Error::Mismatch("fibered product of maps with different codomains".into()));
    }
    let mut by_image = vec![Vec::new(); g.cod.len()];
    for y in 0..g.dom.len() {
        by_image[g.map[y]].push(y);
    }
    let tuples = (0..f.dom.len()).flat_map(|x| by_image[f.map[x]].iter().map(move |&y| vec![x, y]));
    let space = TupleSpace::build(&[&f.dom, &g.dom], tuples);
    let pr1 = space.projection(0, &f.dom);
    let pr2 = space.projection(1, &g.dom);
    Ok(FiberedProduct { space, pr1, pr2 })
}

pub fn product(x: &Arc<FinSpace>, y: &Arc<FinSpace>) -> TupleSpace {
    TupleSpace::build(&[x, y], (0..x.len()).flat_map(|a| (0..y.len()).map(move |b| vec![a, b])))
}

/// A map defined on an open subset, given by parallel member and image lists.
#[derive(Clone, Debug)]
pub struct LocalMap {
    pub domain: OpenSet,
    pub image: Vec<usize>,
}

impl LocalMap {
    pub fn apply(&self, i: usize) -> Option<usize> {
        self.domain.members.binary_search(&i).ok().map(|k| self.image[k])
    }
}

/// A point together with an order isomorphism from its minimal open onto the
/// minimal open of `target`, sending the point to `target`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Germ {
    pub base: usize,
    pub target: usize,
    /// Sorted by the first component, which runs over `U_base`.
    pub pairs: Vec<(usize, usize)>,
}

impl Germ {
    pub fn identity(space: &FinSpace, x: usize) -> Germ {
        Germ { base: x, target: x, pairs: space.down(x).iter().map(|&p| (p, p)).collect() }
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        self.pairs.binary_search_by_key(&p, |&(a, _)| a).ok().map(|k| self.pairs[k].1)
    }

    /// Germ at a point of `U_base`, by restriction.
    pub fn restrict(&self, space: &FinSpace, z: usize) -> Germ {
        let target = self.apply(z).expect("restriction point inside the minimal open");
        let pairs = space.down(z).iter().map(|&p| (p, self.apply(p).expect("down-set"))).collect();
        Germ { base: z, target, pairs }
    }

    /// `self ∘ first`, defined when `first.target == self.base`.
    pub fn after(&self, first: &Germ) -> Germ {
        assert_eq!(first.target, self.base, "germs not composable");
        let pairs = first.pairs.iter().map(|&(p, q)| (p, self.apply(q).expect("composable germs"))).collect();
        Germ { base: first.base, target: self.target, pairs }
    }

    pub fn inverse(&self) -> Germ {
        let mut pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&(p, q)| (q, p)).collect();
        pairs.sort_unstable();
        Germ { base: self.target, target: self.base, pairs }
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|&(p, q)| p == q)
    }

    pub fn to_point(&self, space: &FinSpace) -> Point {
        let pairs = self.pairs.iter().map(|&(p, q)| Point::pair(space.point(p).clone(), space.point(q).clone()));
        Point::triple(space.point(self.base).clone(), space.point(self.target).clone(), Point::tuple(pairs))
    }

    pub fn is_valid(&self, space: &FinSpace) -> bool {
        let src = space.down(self.base);
        let dst = space.down(self.target);
        if self.pairs.len() != src.len() || src.len() != dst.len() {
            return false;
        }
        if self.pairs.iter().map(|&(p, _)| p).ne(src.iter().copied()) {
            return false;
        }
        if self.apply(self.base) != Some(self.target) {
            return false;
        }
        let mut img: Vec<usize> = self.pairs.iter().map(|&(_, q)| q).collect();
        img.sort_unstable();
        if img != dst {
            return false;
        }
        self.pairs.iter().all(|&(a, fa)| self.pairs.iter().all(|&(b, fb)| space.leq(a, b) == space.leq(fa, fb)))
    }
}

/// Germ at `p` of a map defined on an open containing `p`.
pub fn germ_of(space: &FinSpace, f: &LocalMap, p: usize) -> Result<Germ> {
    if !f.domain.contains(p) {
        return Err(Error::Precondition(format!("{} outside the domain of the local map", space.point(p))));
    }
    let mut pairs = Vec::new();
    for &q in space.down(p) {
        let image = f.apply(q).ok_or_else(|| Error::Precondition("domain of a local map must be open".into()))?;
        pairs.push((q, image));
    }
    let germ = Germ { base: p, target: f.apply(p).expect("p in domain"), pairs };
    if !germ.is_valid(space) {
        return Err(Error::Precondition(format!("map is not an embedding onto an open at {}", space.point(p))));
    }
    Ok(germ)
}

/// All order isomorphisms `U_x -> U_y` sending `x` to `y`, as germs.
pub fn germs_between(space: &FinSpace, x: usize, y: usize) -> Vec<Germ> {
    let src = space.down(x);
    let dst = space.down(y);
    let mut out = Vec::new();
    if src.len() != dst.len() {
        return out;
    }
    let mut image = vec![usize::MAX; src.len()];
    let mut used = vec![false; dst.len()];
    germ_search(space, src, dst, x, y, 0, &mut image, &mut used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn germ_search(
    space: &FinSpace,
    src: &[usize],
    dst: &[usize],
    x: usize,
    y: usize,
    k: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Germ>,
) {
    if k == src.len() {
        out.push(Germ { base: x, target: y, pairs: src.iter().copied().zip(image.iter().copied()).collect() });
        return;
    }
    for j in 0..dst.len() {
        if used[j] || (src[k] == x) != (dst[j] == y) {
            continue;
        }
        let cand = dst[j];
        let consistent = (0..k).all(|i| {
            space.leq(src[i], src[k]) == space.leq(image[i], cand) && space.leq(src[k], src[i]) == space.leq(cand, image[i])
        });
        if !consistent {
            continue;
        }
        used[j] = true;
        image[k] = cand;
        germ_search(space, src, dst, x, y, k + 1, image, used, out);
        used[j] = false;
    }
}
