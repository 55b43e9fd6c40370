use std::sync::Arc;

use super::{FinGroupoid, GroupoidHom, GroupoidParts};
use crate::error::{Error, Result};
use crate::fintop::{CMap, TupleSpace};

/// The Čech groupoid `H_U` of an étale cover `e: U → H0`, with arrows
/// `(h, p, q)` for `h: e(p) → e(q)`, and its projection to `H`.
#[derive(Clone, Debug)]
pub struct CechGroupoid {
    pub groupoid: Arc<FinGroupoid>,
    pub projection: GroupoidHom,
    pub arrows: TupleSpace,
}

pub fn cech_groupoid(h: &Arc<FinGroupoid>, e: &CMap) -> Result<CechGroupoid> {
    if **e.cod() != **h.obj() {
        return Err(Error::Mismatch("cover must map into the object space".into()));
    }
    if !e.is_etale() || !e.is_surjective() {
        return Err(Error::Precondition("cover is not a surjective local homeomorphism".into()));
    }
    cech_along(h, e)
}

/// The same construction for any map into `H0`; used for `H_{μ0}` where
/// `μ0` need not be surjective.
pub(crate) fn cech_along(h: &Arc<FinGroupoid>, e: &CMap) -> Result<CechGroupoid> {
    let u = e.dom();
    let n = u.len();
    let mut tuples = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for a in h.hom(e.apply(p), e.apply(q)) {
                tuples.push(vec![a, p, q]);
            }
        }
    }
    let ts = TupleSpace::build(&[h.arr(), u, u], tuples);
    let m = ts.len();
    let find = |a: usize, p: usize, q: usize| ts.find(&[a, p, q]).expect("Čech arrow");
    let src: Vec<usize> = (0..m).map(|i| ts.comp(i, 1)).collect();
    let tgt: Vec<usize> = (0..m).map(|i| ts.comp(i, 2)).collect();
    let unit = (0..n).map(|p| find(h.unit(e.apply(p)), p, p)).collect();
    let inv = (0..m).map(|i| find(h.inv(ts.comp(i, 0)), tgt[i], src[i])).collect();
    let g = FinGroupoid::new(GroupoidParts {
        obj: u.clone(),
        arr: ts.space().clone(),
        src: src.clone(),
        tgt: tgt.clone(),
        unit,
        inv,
        comp: |x, y| ts.find(&[h.compose(ts.comp(x, 0), ts.comp(y, 0)), src[y], tgt[x]]),
    })?;
    let g = Arc::new(g);
    let projection =
        GroupoidHom::new(g.clone(), h.clone(), e.map().to_vec(), (0..m).map(|i| ts.comp(i, 0)).collect())?;
    Ok(CechGroupoid { groupoid: g, projection, arrows: ts })
}
