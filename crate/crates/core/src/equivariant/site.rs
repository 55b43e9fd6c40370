//! The site of opens of `H0` with arrows given by local sections of `s`, and
//! the representable sheaves `m_U`.

use std::sync::Arc;

use super::{EquivariantMap, EquivariantSheaf, HSpace};
use crate::error::{Error, Result};
use crate::fintop::OpenSet;
use crate::groupoid::FinGroupoid;

/// The representable sheaf `m_U = s^{-1}(U)` with moment `t` and action by
/// postcomposition. `arrows[i]` is the arrow of `H` at index `i` of the total.
#[derive(Clone, Debug)]
pub struct Representable {
    pub sheaf: EquivariantSheaf,
    pub open: OpenSet,
    pub arrows: Vec<usize>,
}

impl Representable {
    pub fn index_of(&self, arrow: usize) -> Option<usize> {
        self.arrows.binary_search(&arrow).ok()
    }
}

pub fn representable_sheaf(h: &Arc<FinGroupoid>, open: &OpenSet) -> Result<Representable> {
    if open.members().iter().any(|&x| x >= h.n_obj()) || !h.obj().is_down_closed(open.members()) {
        return Err(Error::NotOpen("representable sheaf needs an open set of objects".into()));
    }
    let members: Vec<usize> = (0..h.n_arr()).filter(|&a| open.contains(h.s(a))).collect();
    let (total, incl) = h.arr().subspace(&members);
    let arrows = incl.map().to_vec();
    let moment = arrows.iter().map(|&a| h.t(a)).collect();
    let space = HSpace::new(h.clone(), total, moment, |g, i| arrows.binary_search(&h.compose(g, arrows[i])).ok())?;
    Ok(Representable { sheaf: EquivariantSheaf::new(space)?, open: open.clone(), arrows })
}

/// A continuous section `σ: U → H1` of `s` with `t∘σ` landing in `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SiteArrow {
    pub dom: OpenSet,
    pub cod: OpenSet,
    /// `section[i]` is `σ(dom.members()[i])`.
    pub section: Vec<usize>,
}

impl SiteArrow {
    pub fn new(h: &FinGroupoid, dom: OpenSet, cod: OpenSet, section: Vec<usize>) -> Result<SiteArrow> {
        const S: &str = "SiteArrow";
        if section.len() != dom.len() {
            return Err(Error::invalid(S, "shape", "one arrow per point of the domain"));
        }
        for (i, &x) in dom.members().iter().enumerate() {
            let a = section[i];
            if a >= h.n_arr() || h.s(a) != x {
                return Err(Error::invalid(S, "s∘σ = id", h.obj().point(x).to_string()));
            }
            if !cod.contains(h.t(a)) {
                return Err(Error::invalid(S, "t∘σ lands in V", h.obj().point(x).to_string()));
            }
        }
        for (i, &x) in dom.members().iter().enumerate() {
            for (j, &y) in dom.members().iter().enumerate() {
                if h.obj().leq(x, y) && !h.arr().leq(section[i], section[j]) {
                    return Err(Error::invalid(S, "continuous", h.obj().point(x).to_string()));
                }
            }
        }
        Ok(SiteArrow { dom, cod, section })
    }

    pub fn identity(h: &FinGroupoid, open: &OpenSet) -> SiteArrow {
        SiteArrow {
            dom: open.clone(),
            cod: open.clone(),
            section: open.members().iter().map(|&x| h.unit(x)).collect(),
        }
    }

    pub fn at(&self, x: usize) -> Option<usize> {
        self.dom.members().binary_search(&x).ok().map(|i| self.section[i])
    }

    /// `next ∘ self`: `x ↦ next(t σ x) · σ x`.
    pub fn then(&self, h: &FinGroupoid, next: &SiteArrow) -> Result<SiteArrow> {
        if self.cod != next.dom {
            return Err(Error::Mismatch("site arrows do not compose".into()));
        }
        let section = self.section.iter().map(|&a| h.compose(next.at(h.t(a)).expect("lands in V"), a)).collect();
        Ok(SiteArrow { dom: self.dom.clone(), cod: next.cod.clone(), section })
    }
}

/// All site arrows `U → V`, in lexicographic order of their sections.
pub fn site_hom(h: &FinGroupoid, u: &OpenSet, v: &OpenSet) -> Vec<SiteArrow> {
    let members = u.members();
    let cands: Vec<Vec<usize>> =
        members.iter().map(|&x| h.arrows_from(x).iter().copied().filter(|&a| v.contains(h.t(a))).collect()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(members.len());
    search(h, members, &cands, &mut cur, &mut out);
    out.into_iter().map(|section| SiteArrow { dom: u.clone(), cod: v.clone(), section }).collect()
}

fn search(h: &FinGroupoid, members: &[usize], cands: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let k = cur.len();
    if k == members.len() {
        out.push(cur.clone());
        return;
    }
    let x = members[k];
    for &a in &cands[k] {
        let ok = (0..k).all(|j| {
            let y = members[j];
            (!h.obj().leq(y, x) || h.arr().leq(cur[j], a)) && (!h.obj().leq(x, y) || h.arr().leq(a, cur[j]))
        });
        if ok {
            cur.push(a);
            search(h, members, cands, cur, out);
            cur.pop();
        }
    }
}

/// `m(σ): m_U → m_V`, `γ ↦ γ ∘ σ(s γ)^{-1}`.
pub fn m_on_arrows(h: &FinGroupoid, sigma: &SiteArrow, mu: &Representable, mv: &Representable) -> Result<EquivariantMap> {
    if mu.open != sigma.dom || mv.open != sigma.cod {
        return Err(Error::Mismatch("representables do not match the site arrow".into()));
    }
    let map = mu
        .arrows
        .iter()
        .map(|&g| {
            let s = sigma.at(h.s(g)).expect("source in U");
            mv.index_of(h.compose(g, h.inv(s))).expect("lands in m_V")
        })
        .collect();
    EquivariantMap::new(mu.sheaf.space().clone(), mv.sheaf.space().clone(), map)
}

/// The site arrow `x ↦ F(1_x)^{-1}` of an equivariant map `F: m_U → m_V`.
pub fn site_arrow_of_map(h: &FinGroupoid, f: &EquivariantMap, mu: &Representable, mv: &Representable) -> Result<SiteArrow> {
    let section = mu
        .open
        .members()
        .iter()
        .map(|&x| h.inv(mv.arrows[f.apply(mu.index_of(h.unit(x)).expect("unit in m_U"))]))
        .collect();
    SiteArrow::new(h, mu.open.clone(), mv.open.clone(), section)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::equivariant_maps;
    use crate::group::FinGroup;

    #[test]
    fn site_arrows_match_maps_of_representables_for_pt_z2() {
        let h = Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)));
        let u = h.obj().whole();
        let arrows = site_hom(&h, &u, &u);
        assert_eq!(arrows.len(), 2);
        let m = representable_sheaf(&h, &u).unwrap();
        assert_eq!(equivariant_maps(m.sheaf.space(), m.sheaf.space()).len(), 2);
        for s in &arrows {
            let f = m_on_arrows(&h, s, &m, &m).unwrap();
            assert_eq!(&site_arrow_of_map(&h, &f, &m, &m).unwrap(), s);
        }
    }
}
