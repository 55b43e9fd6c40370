use std::sync::Arc;

use super::{EquivariantMap, HSpace};
use crate::fintop::OpenSet;

/// Every equivariant continuous map `dom → cod`.
///
/// A value is chosen on one point per orbit and propagated along the action;
/// monotonicity is checked as values are fixed.
pub fn equivariant_maps(dom: &Arc<HSpace>, cod: &Arc<HSpace>) -> Vec<EquivariantMap> {
    if *dom.base() != *cod.base() {
        return Vec::new();
    }
    let mut assign = vec![usize::MAX; dom.len()];
    let mut out = Vec::new();
    extend(dom, cod, &mut assign, &mut out);
    out.into_iter().map(|map| EquivariantMap { dom: dom.clone(), cod: cod.clone(), map }).collect()
}

fn extend(dom: &HSpace, cod: &HSpace, assign: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(e) = assign.iter().position(|&v| v == usize::MAX) else {
        out.push(assign.clone());
        return;
    };
    let b = dom.base();
    for f in cod.fiber(dom.moment(e)) {
        let mut fixed = Vec::new();
        let mut ok = true;
        for &h in b.arrows_from(dom.moment(e)) {
            let (he, hf) = (dom.act(h, e), cod.act(h, f));
            if assign[he] == usize::MAX {
                assign[he] = hf;
                fixed.push(he);
            } else if assign[he] != hf {
                ok = false;
                break;
            }
        }
        ok = ok
            && fixed.iter().all(|&p| {
                dom.total().down(p).iter().all(|&q| assign[q] == usize::MAX || cod.total().leq(assign[q], assign[p]))
                    && dom.total().up(p).iter().all(|&q| assign[q] == usize::MAX || cod.total().leq(assign[p], assign[q]))
            });
        if ok {
            extend(dom, cod, assign, out);
        }
        for p in fixed {
            assign[p] = usize::MAX;
        }
    }
}

/// Continuous sections of the moment map over an open set, as lists parallel
/// to `open.members()`.
pub fn sections_over(space: &HSpace, open: &OpenSet) -> Vec<Vec<usize>> {
    let members = open.members();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(members.len());
    section_search(space, members, &mut cur, &mut out);
    out
}

fn section_search(space: &HSpace, members: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let k = cur.len();
    if k == members.len() {
        out.push(cur.clone());
        return;
    }
    let x = members[k];
    let base = space.base().obj();
    for e in space.fiber(x) {
        let ok = (0..k).all(|j| {
            let y = members[j];
            (!base.leq(y, x) || space.total().leq(cur[j], e)) && (!base.leq(x, y) || space.total().leq(e, cur[j]))
        });
        if ok {
            cur.push(e);
            section_search(space, members, cur, out);
            cur.pop();
        }
    }
}
