use std::collections::HashMap;
use std::sync::Arc;

use super::witness::open_over;
use super::{action_groupoid, p_functor, ActionGroupoid, PObject};
use crate::equivariant::{
    equivariant_maps, representable_sheaf, EquivariantMap, EquivariantSheaf, GroupoidObject, HSpace,
};
use crate::error::{Error, Result};
use crate::fintop::OpenSet;
use crate::groupoid::{GroupoidHom, NatTrans, OverGroupoid, SliceCell, SliceTwoCell};
use crate::point::Point;

/// The explicit bijections between slice cells `unit(U) → φ` over `H` and
/// maps `m_U → P(φ)0`, and between their 2-cells and maps `m_U → P(φ)1`.
#[derive(Clone, Debug)]
pub struct SectionsBijection {
    pub cells: Vec<SliceCell>,
    pub object_maps: Vec<EquivariantMap>,
    /// `object_of_cell[i]` is the map corresponding to `cells[i]`.
    pub object_of_cell: Vec<usize>,
    pub two_cells: Vec<SliceTwoCell>,
    pub arrow_maps: Vec<EquivariantMap>,
    /// `pi[i]` is the map corresponding to `two_cells[i]`.
    pub pi: Vec<usize>,
    /// `xi[j]` is the 2-cell corresponding to `arrow_maps[j]`.
    pub xi: Vec<usize>,
}

impl SectionsBijection {
    /// Both directions are mutually inverse and compatible with endpoints.
    pub fn is_bijective(&self) -> bool {
        let inverse = |a: &[usize], b: &[usize]| a.len() == b.len() && (0..a.len()).all(|i| b[a[i]] == i);
        let mut seen = self.object_of_cell.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.object_maps.len()
            && self.cells.len() == self.object_maps.len()
            && inverse(&self.pi, &self.xi)
            && inverse(&self.xi, &self.pi)
    }
}

pub fn sections_bijection(phi: &OverGroupoid, u: &OpenSet) -> Result<SectionsBijection> {
    let h = phi.base();
    let f = phi.structure();
    let g = phi.total();
    let p = p_functor(phi)?;
    let m = representable_sheaf(h, u)?;
    let open = open_over(h, u)?;
    let members = u.members();

    // slice cells unit(U) → G: a point ψ0(x) of G0 and α(x): x → φψ0(x), monotone in x
    let mut cells = Vec::new();
    let mut choice: Vec<(usize, usize)> = Vec::new();
    enumerate_cells(phi, members, &mut choice, &mut |ch: &[(usize, usize)]| {
        let psi = GroupoidHom::new(
            open.total().clone(),
            g.clone(),
            ch.iter().map(|c| c.0).collect(),
            ch.iter().map(|c| g.unit(c.0)).collect(),
        );
        if let Ok(psi) = psi {
            if let Ok(target) = psi.then(f) {
                if let Ok(alpha) = NatTrans::new(open.structure().clone(), target, ch.iter().map(|c| c.1).collect()) {
                    if let Ok(cell) = SliceCell::new(open.clone(), phi.clone(), psi, alpha) {
                        cells.push(cell);
                    }
                }
            }
        }
    });
    let object_maps = equivariant_maps(m.sheaf.space(), p.object.k0().space());
    let obj_index: HashMap<Vec<usize>, usize> =
        object_maps.iter().enumerate().map(|(i, e)| (e.map().to_vec(), i)).collect();
    let object_of_cell = cells
        .iter()
        .map(|c| {
            let v = cell_to_map(&p, &m.arrows, c, members);
            obj_index.get(&v).copied().ok_or_else(|| Error::Mismatch("cell has no matching map".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let cell_of_object: HashMap<usize, usize> = object_of_cell.iter().enumerate().map(|(c, &o)| (o, c)).collect();

    // 2-cells β: ψ ⇒ ψ' with φβ·α = α'
    let mut two_cells = Vec::new();
    for c1 in &cells {
        for c2 in &cells {
            let options: Vec<Vec<usize>> = (0..members.len())
                .map(|i| {
                    g.hom(c1.map().f0(i), c2.map().f0(i))
                        .into_iter()
                        .filter(|&b| h.compose(f.f1(b), c1.alpha().at(i)) == c2.alpha().at(i))
                        .collect()
                })
                .collect();
            for comp in product(&options) {
                if let Ok(beta) = NatTrans::new(c1.map().clone(), c2.map().clone(), comp) {
                    if let Ok(two) = SliceTwoCell::new(c1.clone(), c2.clone(), beta) {
                        two_cells.push(two);
                    }
                }
            }
        }
    }
    let arrow_maps = equivariant_maps(m.sheaf.space(), p.object.k1().space());
    let arr_index: HashMap<Vec<usize>, usize> =
        arrow_maps.iter().enumerate().map(|(i, e)| (e.map().to_vec(), i)).collect();
    let pi = two_cells
        .iter()
        .map(|t| {
            let v: Vec<usize> = m
                .arrows
                .iter()
                .map(|&gamma| {
                    let x = pos(members, h.s(gamma));
                    let a = h.compose(gamma, h.inv(t.dst().alpha().at(x)));
                    p.arrow_of(a, t.omega().at(x)).expect("π arrow")
                })
                .collect();
            arr_index.get(&v).copied().ok_or_else(|| Error::Mismatch("2-cell has no matching map".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let two_index: HashMap<(usize, usize, Vec<usize>), usize> = two_cells
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let key = (cell_key(&cells, t.src()), cell_key(&cells, t.dst()), t.omega().components().to_vec());
            (key, i)
        })
        .collect();
    let inner = p.object.inner();
    let xi = arrow_maps
        .iter()
        .map(|e| {
            let src = obj_index[&e.map().iter().map(|&a| inner.s(a)).collect::<Vec<_>>()];
            let dst = obj_index[&e.map().iter().map(|&a| inner.t(a)).collect::<Vec<_>>()];
            let beta: Vec<usize> = members
                .iter()
                .map(|&x| p.arrows.comp(e.apply(m.index_of(h.unit(x)).expect("unit")), 1))
                .collect();
            two_index
                .get(&(cell_of_object[&src], cell_of_object[&dst], beta))
                .copied()
                .ok_or_else(|| Error::Mismatch("map has no matching 2-cell".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SectionsBijection { cells, object_maps, object_of_cell, two_cells, arrow_maps, pi, xi })
}

fn pos(members: &[usize], x: usize) -> usize {
    members.binary_search(&x).expect("point of U")
}

fn cell_key(cells: &[SliceCell], c: &SliceCell) -> usize {
    cells.iter().position(|d| d == c).expect("enumerated cell")
}

/// `γ ↦ (γ α(s γ)^{-1}, ψ0(s γ))`.
fn cell_to_map(p: &PObject, arrows: &[usize], cell: &SliceCell, members: &[usize]) -> Vec<usize> {
    let h = cell.src().base();
    arrows
        .iter()
        .map(|&gamma| {
            let x = pos(members, h.s(gamma));
            p.object_of(h.compose(gamma, h.inv(cell.alpha().at(x))), cell.map().f0(x)).expect("cell point")
        })
        .collect()
}

fn enumerate_cells(
    phi: &OverGroupoid,
    members: &[usize],
    choice: &mut Vec<(usize, usize)>,
    emit: &mut dyn FnMut(&[(usize, usize)]),
) {
    let k = choice.len();
    if k == members.len() {
        emit(choice);
        return;
    }
    let (g, h, f) = (phi.total(), phi.base(), phi.structure());
    for y in 0..g.n_obj() {
        for a in h.hom(members[k], f.f0(y)) {
            choice.push((y, a));
            enumerate_cells(phi, members, choice, emit);
            choice.pop();
        }
    }
}

fn product(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect()
    })
}

/// The sheaf of connected components of a groupoid object, with the quotient map.
#[derive(Clone, Debug)]
pub struct QuotientSheaf {
    pub sheaf: EquivariantSheaf,
    pub projection: EquivariantMap,
}

pub fn quotient_sheaf(k: &GroupoidObject) -> Result<QuotientSheaf> {
    let inner = k.inner();
    let k0 = k.k0();
    let comps = inner.components();
    let mut class_of = vec![0; inner.n_obj()];
    for (c, members) in comps.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let names: Vec<Point> = comps.iter().map(|m| inner.obj().point(m[0]).clone()).collect();
    let (space, perm) = inner.obj().quotient(&class_of, names)?;
    let space = Arc::new(space);
    let q: Vec<usize> = class_of.iter().map(|&c| perm[c]).collect();
    let mut rep = vec![0; space.len()];
    for (x, &c) in q.iter().enumerate().rev() {
        rep[c] = x;
    }
    let moment = rep.iter().map(|&x| k0.moment(x)).collect();
    let hs = HSpace::new(k.base().clone(), space, moment, |l, c| Some(q[k0.act(l, rep[c])]))?;
    let sheaf = EquivariantSheaf::new(hs)?;
    let projection = EquivariantMap::new(k0.space().clone(), sheaf.space().clone(), q)?;
    Ok(QuotientSheaf { sheaf, projection })
}

/// `P(θ_E)` for a sheaf `E`, its component sheaf, and the comparison
/// `[(h, e)] ↦ h·e` back to `E`.
#[derive(Clone, Debug)]
pub struct SheafUnit {
    pub realization: ActionGroupoid,
    pub p: PObject,
    pub quotient: QuotientSheaf,
    pub comparison: EquivariantMap,
    /// `(s, t)` of `P(θ_E)` is injective.
    pub equivalence_relation: bool,
}

impl SheafUnit {
    pub fn is_isomorphism(&self) -> bool {
        self.equivalence_relation && self.comparison.is_isomorphism()
    }
}

pub fn sheaf_unit(e: &EquivariantSheaf) -> Result<SheafUnit> {
    let realization = action_groupoid(&GroupoidObject::discrete(e))?;
    let p = p_functor(&realization.over)?;
    let quotient = quotient_sheaf(&p.object)?;
    let n = quotient.sheaf.len();
    let mut map = vec![usize::MAX; n];
    for o in 0..p.objects.len() {
        let (a, x) = (p.objects.comp(o, 0), p.objects.comp(o, 1));
        let value = e.act(a, x);
        let c = quotient.projection.apply(o);
        if map[c] != usize::MAX && map[c] != value {
            return Err(Error::Mismatch("h·e is not constant on components".into()));
        }
        map[c] = value;
    }
    let comparison = EquivariantMap::new(quotient.sheaf.space().clone(), e.space().clone(), map)?;
    let inner = p.object.inner();
    let mut pairs: Vec<(usize, usize)> = (0..inner.n_arr()).map(|a| (inner.s(a), inner.t(a))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let equivalence_relation = pairs.len() == inner.n_arr();
    Ok(SheafUnit { realization, p, quotient, comparison, equivalence_relation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;
    use crate::groupoid::FinGroupoid;

    #[test]
    fn sections_of_the_collapse_of_pt_z2() {
        let g = Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)));
        let pt = Arc::new(crate::fintop::FinSpace::discrete(vec![Point::atom("*")]).unwrap());
        let h = Arc::new(FinGroupoid::unit_groupoid(&pt));
        let iota = GroupoidHom::new(g, h.clone(), vec![0], vec![0, 0]).unwrap();
        let b = sections_bijection(&OverGroupoid::new(iota), &h.obj().whole()).unwrap();
        assert_eq!((b.object_maps.len(), b.arrow_maps.len()), (1, 2));
        assert!(b.is_bijective());
    }

    #[test]
    fn free_z2_sheaf_is_recovered() {
        let h = Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)));
        let m = representable_sheaf(&h, &h.obj().whole()).unwrap();
        let u = sheaf_unit(&m.sheaf).unwrap();
        assert!(u.is_isomorphism());
    }
}
