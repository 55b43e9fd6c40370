//! Oracle values for the fixture ledger, on hand-built tables.

use std::collections::{BTreeSet, HashMap};

use super::*;

/// `Z_n` on one object `*`; arrow `i` is `i mod n`.
pub fn cyclic(n: usize) -> Groupoid {
    let names: Vec<String> = if n == 2 { vec!["e".into(), "g".into()] } else { (0..n).map(|i| format!("g{i}")).collect() };
    let mut comp = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            comp.insert((a, b), (a + b) % n);
        }
    }
    Groupoid {
        obj: Space::new(&["*"], &[]),
        arr: Space { names, leq: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect() },
        s: vec![0; n],
        t: vec![0; n],
        unit: vec![0],
        inv: (0..n).map(|a| (n - a) % n).collect(),
        comp,
    }
}

pub fn unit_on(space: &Space) -> Groupoid {
    let n = space.len();
    Groupoid {
        obj: space.clone(),
        arr: space.clone(),
        s: (0..n).collect(),
        t: (0..n).collect(),
        unit: (0..n).collect(),
        inv: (0..n).collect(),
        comp: (0..n).map(|i| ((i, i), i)).collect(),
    }
}

/// Z2 swapping the two points of D2; arrows `1a, 1b, ab, ba`.
pub fn swap() -> Groupoid {
    let obj = Space::new(&["a", "b"], &[]);
    let arr = Space::new(&["1a", "1b", "ab", "ba"], &[]);
    let s = vec![0, 1, 0, 1];
    let t = vec![0, 1, 1, 0];
    let mut comp = HashMap::new();
    for g in 0..4 {
        for h in 0..4 {
            if t[h] == s[g] {
                let c = match (s[h], t[g]) {
                    (0, 0) => 0,
                    (1, 1) => 1,
                    (0, 1) => 2,
                    _ => 3,
                };
                comp.insert((g, h), c);
            }
        }
    }
    Groupoid { obj, arr, s, t, unit: vec![0, 1], inv: vec![0, 1, 3, 2], comp }
}

pub fn point() -> Space {
    Space::new(&["*"], &[])
}

pub fn d2() -> Space {
    Space::new(&["a", "b"], &[])
}

pub fn sierpinski() -> Space {
    Space::new(&["o", "c"], &[("o", "c")])
}

fn to_point(g: &Groupoid) -> Functor {
    Functor { f0: vec![0; g.n_obj()], f1: vec![0; g.n_arr()] }
}

fn counts(objects: usize, arrows: usize) -> String {
    format!("objects={objects} arrows={arrows}")
}

fn names(sp: &Space, members: &[usize]) -> String {
    let mut v: Vec<&str> = members.iter().map(|&i| sp.names[i].as_str()).collect();
    v.sort_unstable();
    v.join(",")
}

/// A sheaf as a groupoid object with identity arrows only.
pub fn discrete(e: &HSet) -> Object {
    Object { inner: unit_on(&e.total), k0: e.clone(), k1: e.clone() }
}

/// `H0 × Z2` with trivial twist, as a groupoid object over `h`.
pub fn z2_bundle(h: &Groupoid) -> Object {
    let n = h.n_obj();
    let z = cyclic(2);
    let names: Vec<String> = (0..n).flat_map(|x| ["e", "g"].map(|a| format!("({},{a})", h.obj.names[x]))).collect();
    let leq = (0..2 * n).map(|i| (0..2 * n).map(|j| i % 2 == j % 2 && h.obj.leq[i / 2][j / 2]).collect()).collect();
    let total = Space { names, leq };
    let mut comp = HashMap::new();
    for i in 0..2 * n {
        for j in 0..2 * n {
            if i / 2 == j / 2 {
                comp.insert((i, j), 2 * (i / 2) + z.c(i % 2, j % 2));
            }
        }
    }
    let inner = Groupoid {
        obj: h.obj.clone(),
        arr: total.clone(),
        s: (0..2 * n).map(|i| i / 2).collect(),
        t: (0..2 * n).map(|i| i / 2).collect(),
        unit: (0..n).map(|x| 2 * x).collect(),
        inv: (0..2 * n).collect(),
        comp,
    };
    let mut act0 = HashMap::new();
    let mut act1 = HashMap::new();
    for g in 0..h.n_arr() {
        act0.insert((g, h.s[g]), h.t[g]);
        for a in 0..2 {
            act1.insert((g, 2 * h.s[g] + a), 2 * h.t[g] + a);
        }
    }
    Object {
        inner,
        k0: HSet { total: h.obj.clone(), moment: (0..n).collect(), act: act0 },
        k1: HSet { total, moment: (0..2 * n).map(|i| i / 2).collect(), act: act1 },
    }
}

/// `θ: H⋉K → H` as a table.
fn theta_functor(h: &Groupoid, k: &Object) -> Functor {
    let mut f1 = Vec::new();
    for a in 0..k.inner.n_arr() {
        for g in 0..h.n_arr() {
            if h.t[g] == k.k1.moment[a] {
                f1.push(g);
            }
        }
    }
    Functor { f0: k.k0.moment.clone(), f1 }
}

fn realization_counts(h: &Groupoid, k: &Object) -> (usize, usize) {
    let r = realization(h, k);
    (r.n_obj(), r.n_arr())
}

/// `Ef` as germ classes: (objects, arrows).
fn ef_counts(g: &Groupoid) -> (usize, usize) {
    (g.n_obj(), g.distinct_germs())
}

/// A gerbe in the sense of the bouquet criterion, via ess. surjectivity and
/// fullness of the structure functor.
fn gerbe_criterion(dom: &Groupoid, cod: &Groupoid, f: &Functor) -> bool {
    essentially_surjective(cod, f) && full(dom, cod, f)
}

/// The germ-class quotient map `G → Ef(G)`, with `Ef(G)` as a table whose
/// arrows are the distinct germs.
fn ef(g: &Groupoid) -> (Groupoid, Functor) {
    let germs: Vec<_> = (0..g.n_arr()).map(|a| g.germ(a)).collect();
    let distinct: Vec<_> = germs.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let class: Vec<usize> = germs.iter().map(|x| distinct.iter().position(|d| d == x).unwrap()).collect();
    let n = distinct.len();
    let mut comp = HashMap::new();
    for a in 0..g.n_arr() {
        for b in 0..g.n_arr() {
            if let Some(&c) = g.comp.get(&(a, b)) {
                comp.insert((class[a], class[b]), class[c]);
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("germ{i}")).collect();
    let rep = |i: usize| class.iter().position(|&c| c == i).unwrap();
    let leq = (0..n).map(|i| (0..n).map(|j| g.arr.leq[rep(i)][rep(j)]).collect()).collect();
    let efg = Groupoid {
        obj: g.obj.clone(),
        arr: Space { names, leq },
        s: (0..n).map(|i| g.s[rep(i)]).collect(),
        t: (0..n).map(|i| g.t[rep(i)]).collect(),
        unit: (0..g.n_obj()).map(|x| class[g.unit[x]]).collect(),
        inv: (0..n).map(|i| class[g.inv[rep(i)]]).collect(),
        comp,
    };
    (efg, Functor { f0: (0..g.n_obj()).collect(), f1: class })
}

fn disjoint(a: &Groupoid, b: &Groupoid) -> Groupoid {
    let join = |x: &Space, y: &Space| {
        let n = x.len() + y.len();
        let names = x.names.iter().map(|s| format!("(l,{s})")).chain(y.names.iter().map(|s| format!("(r,{s})"))).collect();
        let leq = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i < x.len(), j < x.len()) {
                        (true, true) => x.leq[i][j],
                        (false, false) => y.leq[i - x.len()][j - x.len()],
                        _ => false,
                    })
                    .collect()
            })
            .collect();
        Space { names, leq }
    };
    let (no, na) = (a.n_obj(), a.n_arr());
    let mut comp: HashMap<(usize, usize), usize> = a.comp.clone();
    for (&(g, h), &c) in &b.comp {
        comp.insert((g + na, h + na), c + na);
    }
    Groupoid {
        obj: join(&a.obj, &b.obj),
        arr: join(&a.arr, &b.arr),
        s: a.s.iter().copied().chain(b.s.iter().map(|&x| x + no)).collect(),
        t: a.t.iter().copied().chain(b.t.iter().map(|&x| x + no)).collect(),
        unit: a.unit.iter().copied().chain(b.unit.iter().map(|&x| x + na)).collect(),
        inv: a.inv.iter().copied().chain(b.inv.iter().map(|&x| x + na)).collect(),
        comp,
    }
}

/// Every ledger key with its brute-force value.
pub fn values() -> Table {
    let mut v = Table::new();
    let s = sierpinski();
    let (o, c) = (s.idx("o"), s.idx("c"));
    let b = cyclic(2);
    let pt = unit_on(&point());
    let sw = swap();
    let us = unit_on(&s);

    v.insert("space.minimal_open.S.c", names(&s, &s.minimal_open(c)));
    v.insert("space.minimal_open.S.o", names(&s, &s.minimal_open(o)));
    v.insert("space.etale.D2_to_pt", is_local_homeo(&d2(), &point(), &[0, 0]).to_string());
    v.insert("space.etale.S_to_pt", is_local_homeo(&s, &point(), &[0, 0]).to_string());
    v.insert("space.open.c_in_S", s.is_open(&[c]).to_string());
    {
        let pairs: Vec<(usize, usize)> = (0..2).flat_map(|x| (0..2).map(move |y| (x, y))).collect();
        let discrete = pairs.iter().all(|p| pairs.iter().all(|q| p == q || !(d2().leq[p.0][q.0] && d2().leq[p.1][q.1])));
        v.insert("space.fibered.D2_pt_D2", format!("points={} discrete={discrete}", pairs.len()));
        let n = (0..s.len()).filter(|&y| y == o).count();
        v.insert("space.fibered.o_S_S", format!("points={n}"));
    }
    {
        let d = d2();
        let ua = d.minimal_open(0);
        let swap_map = [1usize, 0];
        let germ: Vec<(usize, usize)> = ua.iter().map(|&p| (p, swap_map[p])).collect();
        v.insert("space.germ.swap_at_a", format!("{}->{}", d.names[germ[0].0], d.names[germ[0].1]));
        let (f, g) = ([0usize, 1], [0usize, 0]);
        v.insert("space.germ.agree_at_a", format!("equal={}", ua.iter().all(|&p| f[p] == g[p])));
    }
    v.insert("groupoid.etale.ptZ2", b.is_etale().to_string());
    {
        let mut bad = b.clone();
        bad.arr = Space::new(&["e", "g"], &[("e", "g"), ("g", "e")]);
        v.insert("groupoid.etale.indiscrete_Z2", bad.is_etale().to_string());
    }
    {
        let (n, a) = cech_counts(&us, &[o, c]);
        v.insert("groupoid.cech.unitS", format!("{} nonidentity={}", counts(n, a), a - n));
        let (n, a) = cech_counts(&b, &[0, 0]);
        v.insert("groupoid.cech.ptZ2", counts(n, a));
    }
    {
        // The Čech projection is the identity on hom-sets by construction and
        // surjective on objects; check it on the table anyway.
        let cover = [0usize, 0];
        let mut arrows = Vec::new();
        for p in 0..2 {
            for q in 0..2 {
                for h in b.hom(cover[p], cover[q]) {
                    arrows.push((h, p, q));
                }
            }
        }
        let ff = (0..2).all(|p| (0..2).all(|q| arrows.iter().filter(|a| a.1 == p && a.2 == q).count() == b.hom(0, 0).len()));
        v.insert("groupoid.morita.cech_projection", (ff && essentially_surjective(&b, &Functor { f0: vec![0, 0], f1: vec![] })).to_string());
        let f = to_point(&b);
        v.insert("groupoid.morita.ptZ2_to_pt", (essentially_surjective(&pt, &f) && full(&b, &pt, &f) && faithful(&b, &f)).to_string());
    }
    {
        let incl = Functor { f0: vec![0], f1: vec![0] };
        let (n, a, _, _) = weak_pullback_counts(&pt, &pt, &b, &incl, &incl);
        v.insert("groupoid.weak_pullback.pt_ptZ2_pt", counts(n, a));
    }
    {
        let e = z2_bundle(&pt);
        let r = realization(&pt, &e);
        let pick = Functor { f0: vec![0], f1: vec![0] };
        let to = Functor { f0: vec![0; r.n_obj()], f1: vec![0; r.n_arr()] };
        let (_, _, objs, hom) = weak_pullback_counts(&pt, &r, &pt, &pick, &to);
        let connected = (0..objs.len()).all(|i| (0..objs.len()).all(|j| hom[i][j] > 0));
        v.insert("groupoid.weak_pullback.fiber_E", format!("connected={connected} isotropy={}", hom[0][0]));
    }
    {
        let injective = (0..sw.n_arr()).map(|a| (sw.s[a], sw.t[a])).collect::<BTreeSet<_>>().len() == sw.n_arr();
        v.insert("groupoid.space.pair_D2", format!("{injective} quotient={}", sw.components()));
        let injective = (0..b.n_arr()).map(|a| (b.s[a], b.t[a])).collect::<BTreeSet<_>>().len() == b.n_arr();
        v.insert("groupoid.space.ptZ2", injective.to_string());
    }
    {
        let (m, _) = representable(&b, &[0]);
        let g = b.arr.idx("g");
        let swaps = (0..m.len()).all(|e| m.act[&(g, e)] != e);
        v.insert("site.m.ptZ2_pt", format!("total={} g_swaps={swaps}", m.len()));
        let (m, _) = representable(&sw, &[0]);
        v.insert("site.m.swap_a", format!("total={} moments={}", m.len(), names(&sw.obj, &m.moment)));
    }
    {
        let sections = |h: &Groupoid, u: &[usize], w: &[usize]| {
            all_functions(u.len(), h.n_arr())
                .into_iter()
                .filter(|sec| {
                    u.iter().enumerate().all(|(i, &x)| h.s[sec[i]] == x && w.contains(&h.t[sec[i]]))
                        && u.iter().enumerate().all(|(i, &x)| {
                            u.iter().enumerate().all(|(j, &y)| !h.obj.leq[x][y] || h.arr.leq[sec[i]][sec[j]])
                        })
                })
                .count()
        };
        v.insert("site.hom.ptZ2_pt_pt", sections(&b, &[0], &[0]).to_string());
        v.insert("site.hom.swap_a_b", sections(&sw, &[0], &[1]).to_string());
        // γ ↦ γ∘g^{-1} on m_pt.
        let g = b.arr.idx("g");
        let (_, arrows) = representable(&b, &[0]);
        let moved: Vec<usize> = arrows.iter().map(|&a| b.c(a, b.inv[g])).collect();
        v.insert("site.m_on_arrows.ptZ2_g", format!("swap={}", arrows.iter().zip(&moved).all(|(a, m)| a != m)));
        let (ma, _) = representable(&sw, &[0]);
        let (mb, _) = representable(&sw, &[1]);
        v.insert("site.maps.swap_a_b", equivariant_maps(&sw, &ma, &mb).len().to_string());
    }
    {
        // φ*E = {(x, e) : φ0 x = μ e}, g·(x, e) = (t g, φ1(g)·e), with E two
        // points over Ef(B) acted on trivially.
        let (efb, iota) = ef(&b);
        let act = |k: usize, e: usize| if efb.unit.contains(&k) { e } else { 1 - e };
        let points: Vec<(usize, usize)> = (0..b.n_obj()).flat_map(|x| (0..2).map(move |e| (x, e))).filter(|&(x, _)| iota.f0[x] == 0).collect();
        let g = b.arr.idx("g");
        let free = points.iter().all(|&(x, e)| (b.t[g], act(iota.f1[g], e)) != (x, e));
        v.insert("sheaf.pullback.iota_B_E0", format!("points={} free={free}", points.len()));
    }
    {
        let e = z2_bundle(&pt);
        let (no, na, _) = stalk(&pt, &e, 0);
        v.insert("stalk.E", counts(no, na));
        let two = HSet { total: d2(), moment: vec![0, 0], act: [((0, 0), 0), ((0, 1), 1)].into_iter().collect() };
        let (no, na, _) = stalk(&pt, &discrete(&two), 0);
        v.insert("stalk.D2_over_pt", counts(no, na));
    }
    {
        let e = z2_bundle(&pt);
        let (n, a) = realization_counts(&pt, &e);
        v.insert("action.pt_Z2", counts(n, a));
        let (m, _) = representable(&b, &[0]);
        let r = realization(&b, &discrete(&m));
        let pair = (0..r.n_obj()).all(|x| (0..r.n_obj()).all(|y| r.hom(x, y).len() == 1));
        v.insert("action.ptZ2_m_pt", format!("{} pair={pair}", counts(r.n_obj(), r.n_arr())));
    }
    let (ef_b, iota_b) = ef(&b);
    {
        let p = p_object(&b, &ef_b, &iota_b);
        v.insert("action.P_iota_B", counts(p.inner.n_obj(), p.inner.n_arr()));
        let (n, a) = realization_counts(&ef_b, &p);
        v.insert("action.epsilon_iota_B", counts(n, a));
        let (m, _) = representable(&b, &[0]);
        let mk = discrete(&m);
        let total = realization(&b, &mk);
        let theta = theta_functor(&b, &mk);
        let p = p_object(&total, &b, &theta);
        let back = realization(&b, &p);
        v.insert("action.epsilon_theta_m_pt", format!("valid={}", back.skeleton() == total.skeleton()));
    }
    {
        let (m, _) = representable(&b, &[0]);
        let r = realization(&b, &discrete(&m));
        let f = Functor { f0: vec![0; r.n_obj()], f1: vec![0; r.n_arr()] };
        let morita = essentially_surjective(&pt, &f) && full(&r, &pt, &f) && faithful(&r, &f);
        v.insert("action.realize.ptZ2_pt", format!("arrows={} morita={morita}", r.n_arr()));
        let (m, _) = representable(&sw, &[0]);
        let r = realization(&sw, &discrete(&m));
        let ua = unit_on(&Space::new(&["a"], &[]));
        let f = Functor { f0: vec![0; r.n_obj()], f1: vec![0; r.n_arr()] };
        let morita = essentially_surjective(&ua, &f) && full(&r, &ua, &f) && faithful(&r, &f);
        v.insert("action.realize.swap_a", format!("points={} morita={morita}", m.len()));
    }
    {
        let (m, _) = representable(&b, &[0]);
        let mk = discrete(&m);
        let r = realization(&b, &mk);
        let theta = theta_functor(&b, &mk);
        let id = Functor { f0: vec![0], f1: (0..b.n_arr()).collect() };
        let (n, a, _, _) = weak_pullback_counts(&b, &r, &b, &id, &theta);
        v.insert("action.inverse_image.ptZ2_id_pt", counts(n, a));
        let ud = unit_on(&d2());
        let (m, _) = representable(&pt, &[0]);
        let mk = discrete(&m);
        let r = realization(&pt, &mk);
        let theta = theta_functor(&pt, &mk);
        let (n, a, _, _) = weak_pullback_counts(&ud, &r, &pt, &to_point(&ud), &theta);
        v.insert("action.inverse_image.D2_pt", counts(n, a));
    }
    {
        let p = p_object(&b, &ef_b, &iota_b);
        let (m, _) = representable(&ef_b, &[0]);
        let objs = equivariant_maps(&ef_b, &m, &p.k0).len();
        let arrs = equivariant_maps(&ef_b, &m, &p.k1).len();
        v.insert("action.sections.iota_B_pt", counts(objs, arrs));
        let id = Functor { f0: vec![0, 1], f1: (0..sw.n_arr()).collect() };
        let p = p_object(&sw, &sw, &id);
        let (m, _) = representable(&sw, &[0]);
        let objs = equivariant_maps(&sw, &m, &p.k0).len();
        let arrs = equivariant_maps(&sw, &m, &p.k1).len();
        v.insert("action.sections.swap_id_a", counts(objs, arrs));
    }
    {
        let all = |sp: &Space| (0..sp.len()).map(|x| (0..sp.len()).map(|y| germs_between(sp, x, y).len()).sum::<usize>()).sum::<usize>();
        v.insert("effective.haefliger.D2", format!("arrows={}", all(&d2())));
        v.insert("effective.haefliger.S", format!("arrows={}", all(&s)));
        let identity = (0..b.n_arr()).all(|a| {
            let (x, y, pairs) = b.germ(a);
            x == y && pairs.iter().all(|&(p, q)| p == q)
        });
        v.insert("effective.iota_tilde.ptZ2", format!("identity={identity}"));
        v.insert("effective.iota_tilde.swap", format!("injective={}", sw.distinct_germs() == sw.n_arr()));
        let (n, a) = ef_counts(&b);
        v.insert("effective.part.ptZ2", counts(n, a));
        v.insert("effective.is_effective.swap", sw.ineffective_pair().is_none().to_string());
        let w = b.ineffective_pair().map(|(x, y)| names(&b.arr, &[x, y])).unwrap_or_default();
        v.insert("effective.is_effective.ptZ2", format!("{} witness={w}", b.ineffective_pair().is_none()));
        let iso = |g: &Groupoid, x: usize| g.hom(x, x).into_iter().filter(|&a| g.germ(a) == g.germ(g.unit[x])).count();
        v.insert("effective.isotropy.ptZ2", iso(&b, 0).to_string());
        v.insert("effective.isotropy.swap_a", iso(&sw, 0).to_string());
        // Ef(q) sends the germ class of σ to the class of q(σ) = g, whose germ
        // at a point is the identity.
        let (efb, class) = ef(&b);
        let g = b.arr.idx("g");
        let target = class.f1[g];
        let unit = efb.unit[0];
        v.insert("effective.ef_on_hom.swap_to_ptZ2", format!("identity={}", target == unit && class.f1[0] == unit));
    }
    {
        let e = z2_bundle(&pt);
        let r = realization(&pt, &e);
        let (x, y) = (r.hom(0, 0)[0], r.hom(0, 0)[1]);
        // θ'(h, k) = (h, h^{-1}·s k, t k): both arrows have h = 1 and the same
        // endpoints.
        let same_theta = r.s[x] == r.s[y] && r.t[x] == r.t[y];
        v.insert("effective.same_germ.E", format!("germ={} theta_prime={same_theta}", r.germ(x) == r.germ(y)));
    }
    {
        let bouquet = |h: &Groupoid, k: &Object| {
            (0..h.n_obj()).all(|x| k.k0.moment.contains(&x))
                && (0..k.inner.n_obj()).all(|a| {
                    (0..k.inner.n_obj()).all(|c| k.k0.moment[a] != k.k0.moment[c] || !k.inner.hom(a, c).is_empty())
                })
        };
        v.insert("gerbe.bouquet.E", bouquet(&pt, &z2_bundle(&pt)).to_string());
        let single = HSet {
            total: Space::new(&["o"], &[]),
            moment: vec![o],
            act: [((o, 0), 0)].into_iter().collect(),
        };
        v.insert("gerbe.bouquet.o_over_S", bouquet(&us, &discrete(&single)).to_string());
        let stalkwise = |h: &Groupoid, k: &Object| {
            (0..h.n_obj()).all(|x| {
                let (n, _, comps) = stalk(h, k, x);
                n > 0 && comps == 1
            })
        };
        v.insert("gerbe.stalkwise.E", stalkwise(&pt, &z2_bundle(&pt)).to_string());
        let two = HSet { total: d2(), moment: vec![0, 0], act: [((0, 0), 0), ((0, 1), 1)].into_iter().collect() };
        v.insert("gerbe.stalkwise.two_points", stalkwise(&pt, &discrete(&two)).to_string());
        let e = z2_bundle(&pt);
        let r = realization(&pt, &e);
        v.insert("gerbe.full.theta_E", full(&r, &pt, &theta_functor(&pt, &e)).to_string());
        let ud = unit_on(&d2());
        v.insert("gerbe.full.D2_to_pt", full(&ud, &pt, &to_point(&ud)).to_string());
    }
    {
        // Ef(H⋉B) against the Čech groupoid of μ0, compared by counts.
        for (key, h, k) in [("gerbe.ef_realization.pt_E", &pt, z2_bundle(&pt)), ("gerbe.ef_realization.S_Z2", &us, z2_bundle(&us))] {
            let r = realization(h, &k);
            let (_, arrows) = ef_counts(&r);
            let mu = &k.k0.moment;
            let cech: usize = (0..mu.len()).map(|p| (0..mu.len()).map(|q| h.hom(mu[p], mu[q]).len()).sum::<usize>()).sum();
            v.insert(key, format!("arrows={arrows} iso={}", arrows == cech));
        }
    }
    {
        let p = p_object(&b, &ef_b, &iota_b);
        v.insert("gerbe.from_ineffective.ptZ2", counts(p.inner.n_obj(), p.inner.n_arr()));
        let g = disjoint(&b, &sw);
        let (efg, iota) = ef(&g);
        let p = p_object(&g, &efg, &iota);
        let bouquet = gerbe_criterion(&g, &efg, &iota);
        v.insert("gerbe.from_ineffective.ptZ2_swap", format!("{} bouquet={bouquet}", counts(p.inner.n_obj(), p.inner.n_arr())));
    }
    {
        let decomposition = |dom: &Groupoid, cod: &Groupoid, f: &Functor| {
            let (efc, iota) = ef(cod);
            let comp = Functor { f0: f.f0.iter().map(|&x| iota.f0[x]).collect(), f1: f.f1.iter().map(|&a| iota.f1[a]).collect() };
            format!("{},{},{}", gerbe_criterion(dom, cod, f), gerbe_criterion(dom, &efc, &comp), full(dom, cod, f))
        };
        let e = z2_bundle(&pt);
        let r = realization(&pt, &e);
        v.insert("gerbe.decomposition.theta_E", decomposition(&r, &pt, &theta_functor(&pt, &e)));
        v.insert("gerbe.decomposition.iota_B", decomposition(&b, &ef_b, &iota_b));
        v.insert("gerbe.decomposition.pt_in_ptZ2", decomposition(&pt, &b, &Functor { f0: vec![0], f1: vec![0] }));
    }
    {
        let e = z2_bundle(&pt);
        let r = realization(&pt, &e);
        let inner = e.inner.hom(0, 0).len();
        let ineff = r.hom(0, 0).into_iter().filter(|&a| r.germ(a).2.iter().all(|&(p, q)| p == q)).count();
        let pick = Functor { f0: vec![0], f1: vec![0] };
        let to = Functor { f0: vec![0; r.n_obj()], f1: vec![0; r.n_arr()] };
        let (_, _, _, hom) = weak_pullback_counts(&pt, &r, &pt, &pick, &to);
        v.insert("gerbe.isotropy.E", format!("{inner},{ineff},{}", hom[0][0]));
    }
    {
        let e = z2_bundle(&us);
        let r = realization(&us, &e);
        let theta = theta_functor(&us, &e);
        let uo = unit_on(&Space::new(&["o"], &[]));
        let incl = Functor { f0: vec![o], f1: vec![o] };
        let (n, a, _, _) = weak_pullback_counts(&uo, &r, &us, &incl, &theta);
        v.insert("gets.pullback.o_in_S", counts(n, a));
    }
    {
        let (n, a) = ef_counts(&b);
        v.insert("gets.theta.ptZ2", counts(n, a));
        // Θ(G) has total G and Ξ takes the total.
        v.insert("gets.xi_theta.ptZ2", format!("identity={}", p_total_is(&b)));
        let e = z2_bundle(&pt);
        let r = realization(&pt, &e);
        let (efr, _) = ef(&r);
        let f = Functor { f0: vec![0; efr.n_obj()], f1: vec![0; efr.n_arr()] };
        let morita = essentially_surjective(&pt, &f) && full(&efr, &pt, &f) && faithful(&efr, &f);
        v.insert("gets.theta_xi.pt_E", format!("morita={morita}"));
        let id = Functor { f0: vec![0], f1: (0..b.n_arr()).collect() };
        let autos = natural_endos(&b, &id);
        let g = autos.iter().find(|c| c[0] != b.unit[0]).map(|c| c[0]);
        let law = autos.len() == 2 && g.map_or(false, |g| b.c(g, g) == b.unit[0]);
        v.insert("gets.automorphisms.ptZ2", format!("count={} law={}", autos.len(), if law { "Z2" } else { "other" }));
        v.insert("gets.twist.ptZ2", format!("nontrivial={}", g.is_some()));
        v.insert("gets.two_cells.ptZ2_over_pt", autos.len().to_string());
    }
    {
        // Base maps of the chain Čech(pt ⊔ pt) → pt//Z2 → Ef → Ef compose
        // associatively as tables.
        let p = [0usize, 0];
        let i = [0usize];
        let id = [0usize];
        let left: Vec<usize> = p.iter().map(|&x| id[i[x]]).collect();
        let right: Vec<usize> = p.iter().map(|&x| id[i[x]]).collect();
        v.insert("gets.associativity.chain", (left == right).to_string());
    }
    {
        let w = b.ineffective_pair().map(|(x, y)| vec![b.arr.names[x].clone(), b.arr.names[y].clone()]).unwrap_or_default();
        let quoted: Vec<String> = w.iter().map(|s| format!("\"{s}\"")).collect();
        v.insert(
            "cli.check_effective.ptZ2",
            format!("{{\"effective\":{},\"witness\":[{}]}}", b.ineffective_pair().is_none(), quoted.join(",")),
        );
        let (efb, _) = ef(&b);
        v.insert("cli.effective_part.ptZ2", format!("unit={}", (0..efb.n_arr()).all(|a| efb.unit.contains(&a))));
    }
    v
}

/// The total of `ι_G` is `G`: the realization of `P(ι_G)` over `Ef(G)` has
/// the same counts and skeleton as `G`.
fn p_total_is(g: &Groupoid) -> bool {
    let (efg, iota) = ef(g);
    let p = p_object(g, &efg, &iota);
    let r = realization(&efg, &p);
    r.n_obj() >= g.n_obj() && r.skeleton() == g.skeleton()
}
