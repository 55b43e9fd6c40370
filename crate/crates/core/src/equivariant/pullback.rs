use std::sync::Arc;

use super::{EquivariantSheaf, GroupoidObject, HSpace};
use crate::error::{Error, Result};
use crate::fintop::TupleSpace;
use crate::groupoid::{FinGroupoid, GroupoidHom, GroupoidParts};

/// `φ*E = G0 ×_{H0} E`, pairs `(x, e)` with `φ(x) = μ(e)`, acted on by
/// `g·(x, e) = (t g, φ(g)·e)`.
#[derive(Clone, Debug)]
pub struct PulledBackSheaf {
    pub sheaf: EquivariantSheaf,
    pub pairs: TupleSpace,
}

pub fn pullback_sheaf(phi: &GroupoidHom, e: &EquivariantSheaf) -> Result<PulledBackSheaf> {
    if **e.base() != **phi.cod() {
        return Err(Error::Mismatch("sheaf is not over the codomain".into()));
    }
    let g = phi.dom();
    let pairs = build_pairs(g, phi, e);
    let moment = (0..pairs.len()).map(|i| pairs.comp(i, 0)).collect();
    let space = HSpace::new(g.clone(), pairs.space().clone(), moment, |a, i| {
        pairs.find(&[g.t(a), e.act(phi.f1(a), pairs.comp(i, 1))])
    })?;
    Ok(PulledBackSheaf { sheaf: EquivariantSheaf::new(space)?, pairs })
}

fn build_pairs(g: &FinGroupoid, phi: &GroupoidHom, e: &HSpace) -> TupleSpace {
    TupleSpace::build(
        &[g.obj(), e.total()],
        (0..g.n_obj()).flat_map(|x| e.fiber(phi.f0(x)).into_iter().map(move |y| vec![x, y])),
    )
}

#[derive(Clone, Debug)]
pub struct PulledBackObject {
    pub object: GroupoidObject,
    pub objects: TupleSpace,
    pub arrows: TupleSpace,
}

/// `φ*K`, computed componentwise on objects and arrows.
pub fn pullback_object(phi: &GroupoidHom, k: &GroupoidObject) -> Result<PulledBackObject> {
    let g = phi.dom();
    let inner = k.inner();
    let k0 = pullback_sheaf(phi, k.k0())?;
    let k1 = pullback_sheaf(phi, k.k1())?;
    let (objects, arrows) = (k0.pairs, k1.pairs);
    let n1 = arrows.len();
    let lift = |i: usize, f: &dyn Fn(usize) -> usize| {
        objects.find(&[arrows.comp(i, 0), f(arrows.comp(i, 1))]).expect("pulled back object")
    };
    let groupoid = FinGroupoid::new(GroupoidParts {
        obj: objects.space().clone(),
        arr: arrows.space().clone(),
        src: (0..n1).map(|i| lift(i, &|a| inner.s(a))).collect(),
        tgt: (0..n1).map(|i| lift(i, &|a| inner.t(a))).collect(),
        unit: (0..objects.len())
            .map(|o| arrows.find(&[objects.comp(o, 0), inner.unit(objects.comp(o, 1))]).expect("unit"))
            .collect(),
        inv: (0..n1).map(|i| arrows.find(&[arrows.comp(i, 0), inner.inv(arrows.comp(i, 1))]).expect("inverse")).collect(),
        comp: |a, b| {
            let x = arrows.comp(a, 0);
            (x == arrows.comp(b, 0))
                .then(|| arrows.find(&[x, inner.compose(arrows.comp(a, 1), arrows.comp(b, 1))]))
                .flatten()
        },
    })?;
    let object = GroupoidObject::new(Arc::new(groupoid), k0.sheaf, k1.sheaf)?;
    debug_assert!(**object.base() == **g);
    Ok(PulledBackObject { object, objects, arrows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::FinSpace;
    use crate::group::FinGroup;
    use crate::point::Point;

    #[test]
    fn pulling_a_twisted_bundle_back_to_a_point_forgets_the_twist() {
        let z2 = FinGroup::cyclic(2);
        let h = Arc::new(FinGroupoid::delooping(&z2));
        let k = GroupoidObject::group_bundle(&h, &z2, |_| vec![0, 1]).unwrap();
        let pt = Arc::new(FinSpace::discrete(vec![Point::atom("p")]).unwrap());
        let unit = Arc::new(FinGroupoid::unit_groupoid(&pt));
        let phi = GroupoidHom::new(unit, h.clone(), vec![0], vec![h.unit(0)]).unwrap();
        let pb = pullback_object(&phi, &k).unwrap();
        assert_eq!(pb.object.inner().n_arr(), 2);
        assert_eq!(pb.object.inner().isotropy(0).len(), 2);
    }
}
