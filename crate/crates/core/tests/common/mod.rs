//! Brute-force oracles on raw tables. Library types are only read through
//! their data accessors; every derived quantity is recomputed here by
//! exhaustive enumeration.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use etale_core::equivariant::{EquivariantSheaf, GroupoidObject};
use etale_core::fintop::FinSpace;
use etale_core::groupoid::{FinGroupoid, GroupoidHom};

#[derive(Clone, Debug)]
pub struct Space {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl Space {
    pub fn from_lib(s: &FinSpace) -> Space {
        let n = s.len();
        Space {
            names: (0..n).map(|i| s.point(i).to_string()).collect(),
            leq: (0..n).map(|p| (0..n).map(|q| s.leq(p, q)).collect()).collect(),
        }
    }

    pub fn new(names: &[&str], pairs: &[(&str, &str)]) -> Space {
        let n = names.len();
        let idx = |s: &str| names.iter().position(|&m| m == s).unwrap();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(a, b) in pairs {
            leq[idx(a)][idx(b)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Space { names: names.iter().map(|s| s.to_string()).collect(), leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn idx(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).unwrap()
    }

    /// Down-closed subsets.
    pub fn is_open(&self, set: &[usize]) -> bool {
        set.iter().all(|&q| (0..self.len()).all(|p| !self.leq[p][q] || set.contains(&p)))
    }

    pub fn opens(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| self.is_open(s))
            .collect()
    }

    /// Intersection of all opens containing `x`.
    pub fn minimal_open(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len()).collect();
        for u in self.opens() {
            if u.contains(&x) {
                out.retain(|p| u.contains(p));
            }
        }
        out
    }

    pub fn monotone(&self, cod: &Space, f: &[usize]) -> bool {
        (0..self.len()).all(|p| (0..self.len()).all(|q| !self.leq[p][q] || cod.leq[f[p]][f[q]]))
    }
}

/// `f: X → Y` restricts to a homeomorphism from some open neighbourhood of
/// every point onto an open set.
pub fn is_local_homeo(x: &Space, y: &Space, f: &[usize]) -> bool {
    let opens = x.opens();
    (0..x.len()).all(|p| {
        opens.iter().filter(|v| v.contains(&p)).any(|v| {
            let img: Vec<usize> = v.iter().map(|&q| f[q]).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            sorted.dedup();
            sorted.len() == v.len()
                && y.is_open(&sorted)
                && v.iter().all(|&a| v.iter().all(|&b| x.leq[a][b] == y.leq[f[a]][f[b]]))
        })
    })
}

/// All order isomorphisms `U_x → U_y` sending `x` to `y`.
pub fn germs_between(sp: &Space, x: usize, y: usize) -> Vec<Vec<(usize, usize)>> {
    let (ux, uy) = (sp.minimal_open(x), sp.minimal_open(y));
    let mut out = Vec::new();
    if ux.len() != uy.len() {
        return out;
    }
    for perm in permutations(uy.len()) {
        let img: Vec<usize> = perm.iter().map(|&i| uy[i]).collect();
        let pairs: Vec<(usize, usize)> = ux.iter().copied().zip(img.iter().copied()).collect();
        let sends = pairs.iter().any(|&(a, b)| a == x && b == y);
        let iso = pairs.iter().all(|&(a, fa)| pairs.iter().all(|&(b, fb)| sp.leq[a][b] == sp.leq[fa][fb]));
        if sends && iso {
            out.push(pairs);
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// All functions `[0, n) → [0, m)`.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|f| (0..m).map(move |v| [f.clone(), vec![v]].concat())).collect();
    }
    out
}

#[derive(Clone, Debug)]
pub struct Groupoid {
    pub obj: Space,
    pub arr: Space,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub unit: Vec<usize>,
    pub inv: Vec<usize>,
    /// `(g, h) ↦ g∘h`.
    pub comp: HashMap<(usize, usize), usize>,
}

impl Groupoid {
    pub fn from_lib(g: &FinGroupoid) -> Groupoid {
        let mut comp = HashMap::new();
        for a in 0..g.n_arr() {
            for b in 0..g.n_arr() {
                if let Some(c) = g.try_compose(a, b) {
                    comp.insert((a, b), c);
                }
            }
        }
        Groupoid {
            obj: Space::from_lib(g.obj()),
            arr: Space::from_lib(g.arr()),
            s: (0..g.n_arr()).map(|a| g.s(a)).collect(),
            t: (0..g.n_arr()).map(|a| g.t(a)).collect(),
            unit: (0..g.n_obj()).map(|x| g.unit(x)).collect(),
            inv: (0..g.n_arr()).map(|a| g.inv(a)).collect(),
            comp,
        }
    }

    pub fn n_obj(&self) -> usize {
        self.obj.len()
    }

    pub fn n_arr(&self) -> usize {
        self.arr.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n_arr()).filter(|&a| self.s[a] == x && self.t[a] == y).collect()
    }

    pub fn c(&self, g: usize, h: usize) -> usize {
        self.comp[&(g, h)]
    }

    pub fn is_etale(&self) -> bool {
        is_local_homeo(&self.arr, &self.obj, &self.s)
    }

    /// Germ of `t∘σ` at `s a`, for the local section `σ` of `s` through `a`.
    pub fn germ(&self, a: usize) -> (usize, usize, Vec<(usize, usize)>) {
        let x = self.s[a];
        let pairs = self
            .obj
            .minimal_open(x)
            .into_iter()
            .map(|z| {
                let b: Vec<usize> = (0..self.n_arr()).filter(|&b| self.arr.leq[b][a] && self.s[b] == z).collect();
                assert_eq!(b.len(), 1, "étale");
                (z, self.t[b[0]])
            })
            .collect();
        (x, self.t[a], pairs)
    }

    pub fn distinct_germs(&self) -> usize {
        (0..self.n_arr()).map(|a| self.germ(a)).collect::<BTreeSet<_>>().len()
    }

    /// First parallel pair of distinct arrows with equal germs.
    pub fn ineffective_pair(&self) -> Option<(usize, usize)> {
        for a in 0..self.n_arr() {
            for b in a + 1..self.n_arr() {
                if self.s[a] == self.s[b] && self.t[a] == self.t[b] && self.germ(a) == self.germ(b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn components(&self) -> usize {
        let n = self.n_obj();
        let mut reach = vec![vec![false; n]; n];
        for a in 0..self.n_arr() {
            reach[self.s[a]][self.t[a]] = true;
        }
        let mut seen = vec![false; n];
        let mut count = 0;
        for x in 0..n {
            if !seen[x] {
                count += 1;
                let mut stack = vec![x];
                while let Some(y) = stack.pop() {
                    if !seen[y] {
                        seen[y] = true;
                        stack.extend((0..n).filter(|&z| reach[y][z] || reach[z][y]));
                    }
                }
            }
        }
        count
    }

    /// Component count and sorted isotropy orders, an invariant of
    /// equivalence for groupoids without topology.
    pub fn skeleton(&self) -> (usize, Vec<usize>) {
        let n = self.n_obj();
        let mut reps = Vec::new();
        let mut seen = vec![false; n];
        for x in 0..n {
            if !seen[x] {
                for y in 0..n {
                    if !self.hom(x, y).is_empty() {
                        seen[y] = true;
                    }
                }
                reps.push(self.hom(x, x).len());
            }
        }
        reps.sort_unstable();
        (reps.len(), reps)
    }
}

/// A functor by its object and arrow tables.
#[derive(Clone, Debug)]
pub struct Functor {
    pub f0: Vec<usize>,
    pub f1: Vec<usize>,
}

impl Functor {
    pub fn from_lib(f: &GroupoidHom) -> Functor {
        Functor { f0: f.on_obj().to_vec(), f1: f.on_arr().to_vec() }
    }
}

pub fn essentially_surjective(cod: &Groupoid, f: &Functor) -> bool {
    (0..cod.n_obj()).all(|y| f.f0.iter().any(|&x| !cod.hom(x, y).is_empty()))
}

pub fn full(dom: &Groupoid, cod: &Groupoid, f: &Functor) -> bool {
    (0..dom.n_obj()).all(|x| {
        (0..dom.n_obj()).all(|y| {
            let hit: BTreeSet<usize> = dom.hom(x, y).into_iter().map(|a| f.f1[a]).collect();
            cod.hom(f.f0[x], f.f0[y]).into_iter().all(|k| hit.contains(&k))
        })
    })
}

pub fn faithful(dom: &Groupoid, f: &Functor) -> bool {
    (0..dom.n_obj()).all(|x| {
        (0..dom.n_obj()).all(|y| {
            let h = dom.hom(x, y);
            h.iter().map(|&a| f.f1[a]).collect::<BTreeSet<_>>().len() == h.len()
        })
    })
}

/// Objects and arrows of the weak pullback of `φ: A → C ← B: ψ`.
pub fn weak_pullback_counts(a: &Groupoid, b: &Groupoid, c: &Groupoid, phi: &Functor, psi: &Functor) -> (usize, usize, Vec<(usize, usize, usize)>, Vec<Vec<usize>>) {
    let mut objects = Vec::new();
    for x in 0..a.n_obj() {
        for z in 0..b.n_obj() {
            for r in c.hom(phi.f0[x], psi.f0[z]) {
                objects.push((x, z, r));
            }
        }
    }
    let mut arrows = 0;
    let mut hom = vec![vec![0; objects.len()]; objects.len()];
    for (i, &(x, z, r)) in objects.iter().enumerate() {
        for (j, &(x2, z2, r2)) in objects.iter().enumerate() {
            for u in a.hom(x, x2) {
                for v in b.hom(z, z2) {
                    if c.c(r2, phi.f1[u]) == c.c(psi.f1[v], r) {
                        arrows += 1;
                        hom[i][j] += 1;
                    }
                }
            }
        }
    }
    (objects.len(), arrows, objects, hom)
}

/// A space over `H0` with an action of `H`.
#[derive(Clone, Debug)]
pub struct HSet {
    pub total: Space,
    pub moment: Vec<usize>,
    /// `(h, e) ↦ h·e` for `s h = moment e`.
    pub act: HashMap<(usize, usize), usize>,
}

impl HSet {
    pub fn from_lib(e: &EquivariantSheaf) -> HSet {
        let base = e.base();
        let mut act = HashMap::new();
        for i in 0..e.len() {
            for h in 0..base.n_arr() {
                if base.s(h) == e.moment(i) {
                    act.insert((h, i), e.act(h, i));
                }
            }
        }
        HSet { total: Space::from_lib(e.total()), moment: (0..e.len()).map(|i| e.moment(i)).collect(), act }
    }

    pub fn len(&self) -> usize {
        self.total.len()
    }
}

/// `m_U`: arrows with source in `U`, moment `t`, action by postcomposition.
pub fn representable(h: &Groupoid, u: &[usize]) -> (HSet, Vec<usize>) {
    let arrows: Vec<usize> = (0..h.n_arr()).filter(|&a| u.contains(&h.s[a])).collect();
    let total = Space {
        names: arrows.iter().map(|&a| h.arr.names[a].clone()).collect(),
        leq: arrows.iter().map(|&a| arrows.iter().map(|&b| h.arr.leq[a][b]).collect()).collect(),
    };
    let mut act = HashMap::new();
    for (i, &a) in arrows.iter().enumerate() {
        for g in 0..h.n_arr() {
            if h.s[g] == h.t[a] {
                let j = arrows.iter().position(|&b| b == h.c(g, a)).unwrap();
                act.insert((g, i), j);
            }
        }
    }
    (HSet { total, moment: arrows.iter().map(|&a| h.t[a]).collect(), act }, arrows)
}

/// Every continuous, moment-preserving, equivariant map `dom → cod`.
pub fn equivariant_maps(h: &Groupoid, dom: &HSet, cod: &HSet) -> Vec<Vec<usize>> {
    all_functions(dom.len(), cod.len())
        .into_iter()
        .filter(|f| {
            (0..dom.len()).all(|e| cod.moment[f[e]] == dom.moment[e])
                && dom.total.monotone(&cod.total, f)
                && (0..h.n_arr()).all(|g| {
                    (0..dom.len()).all(|e| dom.act.get(&(g, e)).map_or(true, |&ge| cod.act[&(g, f[e])] == f[ge]))
                })
        })
        .collect()
}

/// A groupoid object by its underlying groupoid and the actions on objects
/// and arrows.
#[derive(Clone, Debug)]
pub struct Object {
    pub inner: Groupoid,
    pub k0: HSet,
    pub k1: HSet,
}

impl Object {
    pub fn from_lib(k: &GroupoidObject) -> Object {
        Object { inner: Groupoid::from_lib(k.inner()), k0: HSet::from_lib(k.k0()), k1: HSet::from_lib(k.k1()) }
    }
}

/// The realization `H⋉K`: arrows `(h, a)` with `t h = μ(a)`, from
/// `h^{-1}·s a` to `t a`.
pub fn realization(h: &Groupoid, k: &Object) -> Groupoid {
    let mut pairs = Vec::new();
    for a in 0..k.inner.n_arr() {
        for g in 0..h.n_arr() {
            if h.t[g] == k.k1.moment[a] {
                pairs.push((g, a));
            }
        }
    }
    let s = pairs.iter().map(|&(g, a)| k.k0.act[&(h.inv[g], k.inner.s[a])]).collect();
    let t = pairs.iter().map(|&(_, a)| k.inner.t[a]).collect();
    let names: Vec<String> = pairs.iter().map(|&(g, a)| format!("({},{})", h.arr.names[g], k.inner.arr.names[a])).collect();
    let leq = pairs
        .iter()
        .map(|&(g, a)| pairs.iter().map(|&(g2, a2)| h.arr.leq[g][g2] && k.inner.arr.leq[a][a2]).collect())
        .collect();
    let mut comp = HashMap::new();
    for (p, &(g2, a2)) in pairs.iter().enumerate() {
        for (q, &(g1, a1)) in pairs.iter().enumerate() {
            let Some(&moved) = k.k1.act.get(&(g2, a1)) else { continue };
            if let Some(&a) = k.inner.comp.get(&(a2, moved)) {
                if let Some(r) = pairs.iter().position(|&x| x == (h.c(g2, g1), a)) {
                    comp.insert((p, q), r);
                }
            }
        }
    }
    let find = |p: (usize, usize)| pairs.iter().position(|&x| x == p).unwrap();
    let unit = (0..k.inner.n_obj()).map(|x| find((h.unit[k.k0.moment[x]], k.inner.unit[x]))).collect();
    let inv = pairs.iter().map(|&(g, a)| find((h.inv[g], k.k1.act[&(h.inv[g], k.inner.inv[a])]))).collect();
    Groupoid { obj: k.inner.obj.clone(), arr: Space { names, leq }, s, t, unit, inv, comp }
}

/// `P(φ)` for `φ: G → H`: objects `(a, x)` with `s a = φ x`, arrows `(a, b)`
/// with `s a = φ(t b)`, `(a, b): (a∘φ b, s b) → (a, t b)`.
pub fn p_object(g: &Groupoid, h: &Groupoid, phi: &Functor) -> Object {
    let objects: Vec<(usize, usize)> = (0..g.n_obj())
        .flat_map(|x| (0..h.n_arr()).filter(move |&a| h.s[a] == phi.f0[x]).map(move |a| (a, x)))
        .collect();
    let arrows: Vec<(usize, usize)> = (0..g.n_arr())
        .flat_map(|b| (0..h.n_arr()).filter(move |&a| h.s[a] == phi.f0[g.t[b]]).map(move |a| (a, b)))
        .collect();
    let oi = |p: (usize, usize)| objects.iter().position(|&o| o == p).unwrap();
    let ai = |p: (usize, usize)| arrows.iter().position(|&o| o == p).unwrap();
    let obj_space = Space {
        names: objects.iter().map(|&(a, x)| format!("({},{})", h.arr.names[a], g.obj.names[x])).collect(),
        leq: objects.iter().map(|&(a, x)| objects.iter().map(|&(b, y)| h.arr.leq[a][b] && g.obj.leq[x][y]).collect()).collect(),
    };
    let arr_space = Space {
        names: arrows.iter().map(|&(a, b)| format!("({},{})", h.arr.names[a], g.arr.names[b])).collect(),
        leq: arrows.iter().map(|&(a, b)| arrows.iter().map(|&(c, d)| h.arr.leq[a][c] && g.arr.leq[b][d]).collect()).collect(),
    };
    let s: Vec<usize> = arrows.iter().map(|&(a, b)| oi((h.c(a, phi.f1[b]), g.s[b]))).collect();
    let t: Vec<usize> = arrows.iter().map(|&(a, b)| oi((a, g.t[b]))).collect();
    let mut comp = HashMap::new();
    for (p, &(a2, b2)) in arrows.iter().enumerate() {
        for (q, &(_, b1)) in arrows.iter().enumerate() {
            if t[q] == s[p] {
                comp.insert((p, q), ai((a2, g.c(b2, b1))));
            }
        }
    }
    let unit = objects.iter().map(|&(a, x)| ai((a, g.unit[x]))).collect();
    let inv = arrows.iter().map(|&(a, b)| ai((h.c(a, phi.f1[b]), g.inv[b]))).collect();
    let inner = Groupoid { obj: obj_space.clone(), arr: arr_space.clone(), s, t, unit, inv, comp };
    let mut act0 = HashMap::new();
    for (i, &(a, x)) in objects.iter().enumerate() {
        for l in 0..h.n_arr() {
            if h.s[l] == h.t[a] {
                act0.insert((l, i), oi((h.c(l, a), x)));
            }
        }
    }
    let mut act1 = HashMap::new();
    for (i, &(a, b)) in arrows.iter().enumerate() {
        for l in 0..h.n_arr() {
            if h.s[l] == h.t[a] {
                act1.insert((l, i), ai((h.c(l, a), b)));
            }
        }
    }
    Object {
        inner,
        k0: HSet { total: obj_space, moment: objects.iter().map(|&(a, _)| h.t[a]).collect(), act: act0 },
        k1: HSet { total: arr_space, moment: arrows.iter().map(|&(a, _)| h.t[a]).collect(), act: act1 },
    }
}

/// Stalk at `x`: objects and arrows are equivariant maps out of `m_{U_x}`.
/// Returns (objects, arrows, components).
pub fn stalk(h: &Groupoid, k: &Object, x: usize) -> (usize, usize, usize) {
    let (m, _) = representable(h, &h.obj.minimal_open(x));
    let objs = equivariant_maps(h, &m, &k.k0);
    let arrs = equivariant_maps(h, &m, &k.k1);
    let unit_x = (0..m.len()).find(|&i| m.moment[i] == x && m.total.names[i] == h.arr.names[h.unit[x]]).unwrap();
    let n = objs.len();
    let mut adj = vec![vec![false; n]; n];
    for a in &arrs {
        let sx = k.inner.s[a[unit_x]];
        let tx = k.inner.t[a[unit_x]];
        let i = objs.iter().position(|o| o[unit_x] == sx).unwrap();
        let j = objs.iter().position(|o| o[unit_x] == tx).unwrap();
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let mut seen = vec![false; n];
    let mut comps = 0;
    for i in 0..n {
        if !seen[i] {
            comps += 1;
            let mut st = vec![i];
            while let Some(p) = st.pop() {
                if !seen[p] {
                    seen[p] = true;
                    st.extend((0..n).filter(|&q| adj[p][q]));
                }
            }
        }
    }
    (objs.len(), arrs.len(), comps)
}

/// Natural transformations `F ⇒ F` for an endofunctor table `f` on `g`,
/// as component lists.
pub fn natural_endos(g: &Groupoid, f: &Functor) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = (0..g.n_obj()).map(|x| g.hom(f.f0[x], f.f0[x])).collect();
    let mut out = vec![vec![]];
    for c in &choices {
        out = out.into_iter().flat_map(|v: Vec<usize>| c.iter().map(move |&a| [v.clone(), vec![a]].concat())).collect();
    }
    out.into_iter()
        .filter(|comp| {
            (0..g.n_arr()).all(|a| {
                let (x, y) = (g.s[a], g.t[a]);
                g.c(comp[y], f.f1[a]) == g.c(f.f1[a], comp[x])
            })
        })
        .collect()
}

/// The Čech groupoid of the cover by the minimal opens of `centers`:
/// (objects, arrows).
pub fn cech_counts(h: &Groupoid, centers: &[usize]) -> (usize, usize) {
    let cover: Vec<usize> = centers.iter().flat_map(|&c| h.obj.minimal_open(c)).collect();
    let arrows = cover.iter().map(|&p| cover.iter().map(|&q| h.hom(p, q).len()).sum::<usize>()).sum();
    (cover.len(), arrows)
}

/// Values keyed like the library ledger.
pub type Table = BTreeMap<&'static str, String>;

pub mod oracle;
