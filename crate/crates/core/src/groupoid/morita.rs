use std::collections::HashSet;
use std::sync::Arc;

use super::{FinGroupoid, GroupoidHom};
use crate::fintop::{FinSpace, TupleSpace};

/// Outcome of the Morita test for `φ: H → G`, with the local sections of
/// `t∘pr1: G1 ×_{G0} H0 → G0` over each minimal open and the outcome of the
/// fully-faithful comparison.
#[derive(Clone, Debug)]
pub struct MoritaCertificate {
    /// For each `y ∈ G0`, pairs `(z, (g, x))` with `z ∈ U_y`, `g: φ(x) → z`.
    pub sections: Vec<Option<Vec<(usize, (usize, usize))>>>,
    pub fully_faithful: bool,
    /// First arrow-level failure of the comparison `H1 → G1 ×_{G0×G0} (H0×H0)`.
    pub comparison_failure: Option<String>,
}

impl MoritaCertificate {
    pub fn essentially_surjective(&self) -> bool {
        self.sections.iter().all(Option::is_some)
    }

    pub fn is_equivalence(&self) -> bool {
        self.essentially_surjective() && self.fully_faithful
    }
}

pub fn is_morita_equivalence(phi: &GroupoidHom) -> MoritaCertificate {
    let h = phi.dom();
    let g = phi.cod();
    let pairs = TupleSpace::build(
        &[g.arr(), h.obj()],
        (0..h.n_obj()).flat_map(|x| g.arrows_from(phi.f0(x)).iter().map(move |&a| vec![a, x])),
    );
    let sections = (0..g.n_obj()).map(|y| local_section(g, &pairs, y)).collect();

    let compare = TupleSpace::build(
        &[g.arr(), h.obj(), h.obj()],
        (0..h.n_obj()).flat_map(|x| {
            (0..h.n_obj()).flat_map(move |x2| g.hom(phi.f0(x), phi.f0(x2)).into_iter().map(move |a| vec![a, x, x2]))
        }),
    );
    let image: Vec<usize> = (0..h.n_arr())
        .map(|a| compare.find(&[phi.f1(a), h.s(a), h.t(a)]).expect("comparison lands in the pullback"))
        .collect();
    let comparison_failure = comparison_failure(h.arr(), compare.space(), &image);
    MoritaCertificate { sections, fully_faithful: comparison_failure.is_none(), comparison_failure }
}

fn comparison_failure(dom: &FinSpace, cod: &FinSpace, image: &[usize]) -> Option<String> {
    let distinct: HashSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() {
        return Some("comparison not injective".into());
    }
    if distinct.len() != cod.len() {
        let missing = (0..cod.len()).find(|i| !distinct.contains(i)).expect("missing point");
        return Some(format!("no arrow over {}", cod.point(missing)));
    }
    for a in 0..dom.len() {
        for b in 0..dom.len() {
            if dom.leq(a, b) != cod.leq(image[a], image[b]) {
                return Some(format!("order differs at {} <= {}", dom.point(a), dom.point(b)));
            }
        }
    }
    None
}

fn local_section(g: &FinGroupoid, pairs: &TupleSpace, y: usize) -> Option<Vec<(usize, (usize, usize))>> {
    let obj = g.obj();
    let mut order: Vec<usize> = obj.down(y).to_vec();
    order.sort_by_key(|&z| obj.down(z).len());
    let mut fibers = vec![Vec::new(); obj.len()];
    for i in 0..pairs.len() {
        fibers[g.t(pairs.comp(i, 0))].push(i);
    }
    let mut choice = vec![usize::MAX; order.len()];
    if section_search(obj, pairs.space(), &order, &fibers, 0, &mut choice) {
        Some(order.iter().zip(&choice).map(|(&z, &i)| (z, (pairs.comp(i, 0), pairs.comp(i, 1)))).collect())
    } else {
        None
    }
}

fn section_search(
    base: &FinSpace,
    total: &FinSpace,
    order: &[usize],
    fibers: &[Vec<usize>],
    k: usize,
    choice: &mut Vec<usize>,
) -> bool {
    if k == order.len() {
        return true;
    }
    let z = order[k];
    for &cand in &fibers[z] {
        let ok = (0..k).all(|j| {
            let w = order[j];
            (!base.leq(w, z) || total.leq(choice[j], cand)) && (!base.leq(z, w) || total.leq(cand, choice[j]))
        });
        if ok {
            choice[k] = cand;
            if section_search(base, total, order, fibers, k + 1, choice) {
                return true;
            }
        }
    }
    false
}

/// Essentially surjective and fully faithful as a plain functor, ignoring topology.
pub fn is_abstract_equivalence(phi: &GroupoidHom) -> bool {
    let h = phi.dom();
    let g = phi.cod();
    let reached: HashSet<usize> =
        (0..h.n_obj()).flat_map(|x| g.arrows_from(phi.f0(x)).iter().map(|&a| g.t(a))).collect();
    if reached.len() != g.n_obj() {
        return false;
    }
    (0..h.n_obj()).all(|x| {
        (0..h.n_obj()).all(|x2| {
            let mut img: Vec<usize> = h.hom(x, x2).iter().map(|&a| phi.f1(a)).collect();
            let n = img.len();
            img.sort_unstable();
            img.dedup();
            img.len() == n && n == g.hom(phi.f0(x), phi.f0(x2)).len()
        })
    })
}

/// Result of asking whether an étale groupoid is an equivalence relation.
#[derive(Clone, Debug)]
pub struct SpaceQuotient {
    pub injective: bool,
    pub quotient: Option<Arc<FinSpace>>,
    pub to_quotient: Option<GroupoidHom>,
    pub morita: Option<MoritaCertificate>,
}

/// Orbit space and the comparison `H → unit(H0/H)` when `(s, t)` is injective.
/// Each class is named by its least point.
pub fn is_equivalent_to_space(h: &Arc<FinGroupoid>) -> SpaceQuotient {
    let mut seen = HashSet::new();
    let injective = (0..h.n_arr()).all(|a| seen.insert((h.s(a), h.t(a))));
    if !injective {
        return SpaceQuotient { injective, quotient: None, to_quotient: None, morita: None };
    }
    let comps = h.components();
    let mut class_of = vec![0; h.n_obj()];
    for (c, members) in comps.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let names = comps.iter().map(|m| h.obj().point(m[0]).clone()).collect();
    let (q, perm) = h.obj().quotient(&class_of, names).expect("quotient of a preorder");
    let q = Arc::new(q);
    let unit = Arc::new(FinGroupoid::unit_groupoid(&q));
    let f0: Vec<usize> = class_of.iter().map(|&c| perm[c]).collect();
    let f1 = (0..h.n_arr()).map(|a| f0[h.s(a)]).collect();
    let hom = GroupoidHom::new(h.clone(), unit, f0, f1).expect("orbit map is a hom");
    let morita = is_morita_equivalence(&hom);
    SpaceQuotient { injective, quotient: Some(q), to_quotient: Some(hom), morita: Some(morita) }
}
