//! Named fixtures and seeded random instances.
//!
//! Random groupoids are action groupoids of small groups acting on random
//! preorders with at most four points, sometimes refined along a cover by
//! minimal opens or joined with a second instance. Non-faithful actions are
//! common, so many instances are ineffective.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equivariant::{representable_sheaf, EquivariantSheaf, GroupoidObject};
use crate::fintop::{CMap, FinSpace};
use crate::fixture::{groupoid_doc, object_doc, sheaf_doc, FixtureFile};
use crate::group::FinGroup;
use crate::groupoid::{cech_groupoid, FinGroupoid};
use crate::point::Point;

pub const MAX_ARROWS: usize = 24;

/// A: swap groupoid on D2. B: pt//Z2. C: unit groupoid on the Sierpiński
/// space. D: `m_pt` over B, the free Z2 sheaf. E: the Z2 bundle over a point.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub a: Arc<FinGroupoid>,
    pub b: Arc<FinGroupoid>,
    pub c: Arc<FinGroupoid>,
    pub d: EquivariantSheaf,
    pub e: GroupoidObject,
    pub unit_pt: Arc<FinGroupoid>,
}

pub fn d2() -> Arc<FinSpace> {
    Arc::new(FinSpace::discrete(vec![Point::atom("a"), Point::atom("b")]).expect("two points"))
}

pub fn swap_groupoid() -> Arc<FinGroupoid> {
    Arc::new(FinGroupoid::group_action(&FinGroup::cyclic(2), &d2(), &[vec![0, 1], vec![1, 0]]).expect("swap action"))
}

/// Z2 over a point with the indiscrete arrow space; `s` is not a local
/// homeomorphism.
pub fn indiscrete_z2() -> FinGroupoid {
    let pt = Arc::new(FinSpace::singleton());
    let (e, g) = (Point::atom("e"), Point::atom("g"));
    let arr = Arc::new(FinSpace::from_points(vec![e.clone(), g.clone()], &[(e.clone(), g.clone()), (g.clone(), e.clone())]).expect("indiscrete"));
    let star = Point::atom("*");
    let legs = [(e.clone(), star.clone()), (g.clone(), star.clone())];
    FinGroupoid::from_points(
        pt,
        arr,
        &legs,
        &legs,
        &[(star, e.clone())],
        &[(e.clone(), e.clone()), (g.clone(), g.clone())],
        &[(e.clone(), e.clone(), e.clone()), (e.clone(), g.clone(), g.clone()), (g.clone(), e.clone(), g.clone()), (g.clone(), g, e)],
    )
    .expect("groupoid laws hold")
}

pub fn fixtures() -> Fixtures {
    let b = Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)));
    let unit_pt = Arc::new(FinGroupoid::unit_groupoid(&Arc::new(FinSpace::singleton())));
    let d = representable_sheaf(&b, &b.obj().whole()).expect("m_pt").sheaf;
    let e = GroupoidObject::group_bundle(&unit_pt, &FinGroup::cyclic(2), |_| vec![0, 1]).expect("Z2 bundle");
    Fixtures {
        a: swap_groupoid(),
        b,
        c: Arc::new(FinGroupoid::unit_groupoid(&Arc::new(FinSpace::sierpinski()))),
        d,
        e,
        unit_pt,
    }
}

/// All named fixtures in one file: groupoids `A`, `B`, `C`, `pt`, sheaf `D`
/// over `B` and groupoid object `E` over `pt`.
pub fn fixture_file() -> FixtureFile {
    let f = fixtures();
    let mut file = FixtureFile::new();
    for (name, g) in [("A", &f.a), ("B", &f.b), ("C", &f.c), ("pt", &f.unit_pt)] {
        file.groupoids.insert(name.into(), groupoid_doc(g));
    }
    file.sheaves.insert("D".into(), sheaf_doc(&f.d, "B"));
    file.objects.insert("E".into(), object_doc(&f.e, "pt"));
    file
}

/// pt//Z2 alone, as groupoid `G`.
pub fn ptz2_file() -> FixtureFile {
    let mut file = FixtureFile::new();
    file.groupoids.insert("G".into(), groupoid_doc(&fixtures().b));
    file
}

pub fn groups() -> Vec<(&'static str, FinGroup)> {
    vec![
        ("Z2", FinGroup::cyclic(2)),
        ("Z3", FinGroup::cyclic(3)),
        ("V4", FinGroup::klein()),
        ("S3", FinGroup::symmetric3()),
    ]
}

/// A random preorder on `n` points `p0, p1, ...`.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> FinSpace {
    let points = (0..n).map(|i| Point::atom(&format!("p{i}"))).collect();
    let density = rng.gen_range(0.0..0.6);
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| p != q && rng.gen_bool(density)).collect();
    FinSpace::from_relation(points, &pairs).expect("closure of a relation").0
}

/// Order automorphisms, as permutations.
pub fn automorphisms(space: &FinSpace) -> Vec<Vec<usize>> {
    let n = space.len();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(space: &FinSpace, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = space.len();
        let i = perm.len();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for j in 0..n {
            if !used[j] && (0..i).all(|k| space.leq(k, i) == space.leq(perm[k], j) && space.leq(i, k) == space.leq(j, perm[k])) {
                used[j] = true;
                perm.push(j);
                go(space, perm, used, out);
                perm.pop();
                used[j] = false;
            }
        }
    }
    go(space, &mut perm, &mut used, &mut out);
    out
}

fn generators(group: &FinGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = closure(group, &gens);
    for g in 0..group.order() {
        if !reached[g] {
            gens.push(g);
            reached = closure(group, &gens);
        }
    }
    gens
}

fn closure(group: &FinGroup, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; group.order()];
    let mut queue = VecDeque::from([group.identity()]);
    seen[group.identity()] = true;
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// All homomorphisms from `group` into the permutations `perms`, as action tables.
pub fn group_homs(group: &FinGroup, perms: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let gens = generators(group);
    let n = perms.first().map_or(0, Vec::len);
    let identity: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(table) = extend(group, &gens, &choice.iter().map(|&c| &perms[c]).collect::<Vec<_>>(), &identity) {
            out.push(table);
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < perms.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    out
}

fn extend(group: &FinGroup, gens: &[usize], images: &[&Vec<usize>], identity: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut table: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    table[group.identity()] = Some(identity.to_vec());
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let px = table[x].clone().expect("visited");
        for (g, img) in gens.iter().zip(images) {
            let y = group.mul(x, *g);
            let py: Vec<usize> = (0..px.len()).map(|i| px[img[i]]).collect();
            match &table[y] {
                Some(existing) if *existing != py => return None,
                Some(_) => {}
                None => {
                    table[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
    }
    table.into_iter().collect()
}

/// A cover of `space` by the disjoint union of the minimal opens of `centers`.
pub fn cover_by_minimal_opens(space: &Arc<FinSpace>, centers: &[usize]) -> Option<CMap> {
    let mut points = Vec::new();
    let mut down = Vec::new();
    let mut image = Vec::new();
    for (k, &c) in centers.iter().enumerate() {
        let members = space.down(c);
        let off = points.len();
        for &p in members {
            points.push(Point::pair(Point::atom(&format!("u{k}")), space.point(p).clone()));
            image.push(p);
            down.push(members.iter().filter(|&&q| space.leq(q, p)).map(|&q| off + members.binary_search(&q).expect("member")).collect());
        }
    }
    let (u, perm) = FinSpace::from_down_sets(points, down).ok()?;
    let mut map = vec![0; u.len()];
    for (old, &new) in perm.iter().enumerate() {
        map[new] = image[old];
    }
    let e = CMap::new(Arc::new(u), space.clone(), map).ok()?;
    (e.is_surjective() && e.is_etale()).then_some(e)
}

/// A random cover by minimal opens: every maximal point plus a few extras.
pub fn random_cover<R: Rng>(rng: &mut R, space: &Arc<FinSpace>) -> CMap {
    let mut centers: Vec<usize> = (0..space.len())
        .filter(|&p| space.up(p).iter().all(|&q| space.leq(q, p)) || rng.gen_bool(0.3))
        .collect();
    if rng.gen_bool(0.3) {
        centers.push(rng.gen_range(0..space.len()));
    }
    cover_by_minimal_opens(space, &centers).expect("maximal points cover")
}

fn random_action<R: Rng>(rng: &mut R, max_points: usize) -> (String, Arc<FinGroupoid>) {
    let n = rng.gen_range(1..=max_points);
    let space = Arc::new(random_space(rng, n));
    let (gname, group) = groups().swap_remove(rng.gen_range(0..4));
    let homs = group_homs(&group, &automorphisms(&space));
    let act = homs.choose(rng).expect("the trivial action").clone();
    let g = FinGroupoid::group_action(&group, &space, &act).expect("action by homeomorphisms");
    (format!("{gname}⋉X{n}"), Arc::new(g))
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub label: String,
    pub groupoid: Arc<FinGroupoid>,
    pub seed: u64,
}

impl Instance {
    /// A generator for choices made while checking this instance.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ 0x9e37_79b9_7f4a_7c15)
    }
}

pub fn random_groupoid<R: Rng>(rng: &mut R) -> (String, Arc<FinGroupoid>) {
    let (mut label, mut g) = random_action(rng, 4);
    match rng.gen_range(0..5) {
        0 => {
            let (l2, g2) = random_action(rng, 2);
            if g.n_arr() + g2.n_arr() <= MAX_ARROWS {
                g = Arc::new(FinGroupoid::disjoint_union(&[("l", &g), ("r", &g2)]).expect("disjoint union"));
                label = format!("{label} ⊔ {l2}");
            }
        }
        1 => {
            let cover = random_cover(rng, g.obj());
            let refined = cech_groupoid(&g, &cover).expect("cover by minimal opens");
            if refined.groupoid.n_arr() <= MAX_ARROWS {
                g = refined.groupoid;
                label = format!("Čech({label})");
            }
        }
        _ => {}
    }
    (label, g)
}

/// `count` instances; instance `i` depends only on `(seed, i)`.
pub fn random_instances(seed: u64, count: usize) -> Vec<Instance> {
    (0..count)
        .map(|index| {
            let s = seed.wrapping_mul(0x1000_0000_01b3).wrapping_add(index as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let (label, groupoid) = random_groupoid(&mut rng);
            Instance { index, label, groupoid, seed: s }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_are_small_and_etale() {
        for inst in random_instances(3, 60) {
            assert!(inst.groupoid.is_etale(), "{}", inst.label);
            assert!(inst.groupoid.n_arr() <= MAX_ARROWS, "{}", inst.label);
        }
    }

    #[test]
    fn homs_from_klein_into_s3_permutations() {
        let three = FinSpace::discrete((0..3).map(|i| Point::atom(&format!("p{i}"))).collect()).unwrap();
        let auts = automorphisms(&three);
        assert_eq!(auts.len(), 6);
        // the trivial hom, or one of three index-2 kernels sent onto one of three transpositions
        assert_eq!(group_homs(&FinGroup::klein(), &auts).len(), 10);
    }

    #[test]
    fn named_fixture_file_loads() {
        let world = fixture_file().load().unwrap();
        assert_eq!(world.groupoid("B").unwrap().n_arr(), 2);
        assert_eq!(world.object("E").unwrap().inner().n_arr(), 2);
    }
}
