use std::sync::Arc;

use crate::equivariant::{EquivariantSheaf, GroupoidObject, HSpace, InternalFunctor, InternalNatTrans};
use crate::error::{Error, Result};
use crate::fintop::TupleSpace;
use crate::groupoid::{FinGroupoid, GroupoidParts, OverGroupoid, SliceCell, SliceTwoCell};

/// `P(φ)` for `φ: G → H`: objects `(h, x)` with `s(h) = φ(x)`, arrows
/// `(h, g)` with `s(h) = φ(t g)`, both with moment `t∘pr1` and `H` acting on
/// the first factor.
#[derive(Clone, Debug)]
pub struct PObject {
    pub object: GroupoidObject,
    pub objects: TupleSpace,
    pub arrows: TupleSpace,
    pub over: OverGroupoid,
}

impl PObject {
    pub fn object_of(&self, h: usize, x: usize) -> Option<usize> {
        self.objects.find(&[h, x])
    }

    pub fn arrow_of(&self, h: usize, g: usize) -> Option<usize> {
        self.arrows.find(&[h, g])
    }
}

pub fn p_functor(phi: &OverGroupoid) -> Result<PObject> {
    let f = phi.structure();
    if !f.obj_map().is_etale() {
        return Err(Error::Precondition("P(φ) needs φ0 to be a local homeomorphism".into()));
    }
    let (g, h) = (f.dom(), f.cod());
    let objects = TupleSpace::build(
        &[h.arr(), g.obj()],
        (0..g.n_obj()).flat_map(|x| h.arrows_from(f.f0(x)).iter().map(move |&a| vec![a, x])),
    );
    let arrows = TupleSpace::build(
        &[h.arr(), g.arr()],
        (0..g.n_arr()).flat_map(|b| h.arrows_from(f.f0(g.t(b))).iter().map(move |&a| vec![a, b])),
    );
    let n1 = arrows.len();
    let obj = |a: usize, x: usize| objects.find(&[a, x]).expect("P object");
    let arr = |a: usize, b: usize| arrows.find(&[a, b]).expect("P arrow");
    let part = |i: usize| (arrows.comp(i, 0), arrows.comp(i, 1));
    let inner = FinGroupoid::assemble(GroupoidParts {
        obj: objects.space().clone(),
        arr: arrows.space().clone(),
        src: (0..n1)
            .map(|i| {
                let (a, b) = part(i);
                obj(h.compose(a, f.f1(b)), g.s(b))
            })
            .collect(),
        tgt: (0..n1)
            .map(|i| {
                let (a, b) = part(i);
                obj(a, g.t(b))
            })
            .collect(),
        unit: (0..objects.len()).map(|o| arr(objects.comp(o, 0), g.unit(objects.comp(o, 1)))).collect(),
        inv: (0..n1)
            .map(|i| {
                let (a, b) = part(i);
                arr(h.compose(a, f.f1(b)), g.inv(b))
            })
            .collect(),
        comp: |p: usize, q: usize| {
            let ((a2, b2), (_, b1)) = (part(p), part(q));
            arrows.find(&[a2, g.try_compose(b2, b1)?])
        },
    })?;
    let k0 = HSpace::new(
        h.clone(),
        objects.space().clone(),
        (0..objects.len()).map(|o| h.t(objects.comp(o, 0))).collect(),
        |l, o| objects.find(&[h.compose(l, objects.comp(o, 0)), objects.comp(o, 1)]),
    )?;
    let k1 = HSpace::new(h.clone(), arrows.space().clone(), (0..n1).map(|i| h.t(part(i).0)).collect(), |l, i| {
        arrows.find(&[h.compose(l, part(i).0), part(i).1])
    })?;
    let object = GroupoidObject::new(Arc::new(inner), EquivariantSheaf::new(k0)?, EquivariantSheaf::new(k1)?)?;
    Ok(PObject { object, objects, arrows, over: phi.clone() })
}

/// `P(f, α)`: `(h, x) ↦ (h α(x)^{-1}, f x)` and `(h, g) ↦ (h α(t g)^{-1}, f g)`.
pub fn p_on_arrows(cell: &SliceCell, src: &PObject, dst: &PObject) -> Result<InternalFunctor> {
    if cell.src() != &src.over || cell.dst() != &dst.over {
        return Err(Error::Mismatch("P objects do not match the slice cell".into()));
    }
    let h = cell.src().base();
    let (f, alpha) = (cell.map(), cell.alpha());
    let g = f.dom();
    let f0 = (0..src.objects.len())
        .map(|o| {
            let (a, x) = (src.objects.comp(o, 0), src.objects.comp(o, 1));
            dst.object_of(h.compose(a, h.inv(alpha.at(x))), f.f0(x)).expect("image object")
        })
        .collect();
    let f1 = (0..src.arrows.len())
        .map(|i| {
            let (a, b) = (src.arrows.comp(i, 0), src.arrows.comp(i, 1));
            dst.arrow_of(h.compose(a, h.inv(alpha.at(g.t(b)))), f.f1(b)).expect("image arrow")
        })
        .collect();
    InternalFunctor::new(&src.object, &dst.object, f0, f1)
}

/// `P(ω)`: `(h, x) ↦ (h α'(x)^{-1}, ω(x))`, running `P(f, α) ⇒ P(f', α')`.
pub fn p_on_2cells(two: &SliceTwoCell, src: &PObject, dst: &PObject) -> Result<InternalNatTrans> {
    let from = p_on_arrows(two.src(), src, dst)?;
    let to = p_on_arrows(two.dst(), src, dst)?;
    let h = two.src().src().base();
    let alpha2 = two.dst().alpha();
    let comp = (0..src.objects.len())
        .map(|o| {
            let (a, x) = (src.objects.comp(o, 0), src.objects.comp(o, 1));
            dst.arrow_of(h.compose(a, h.inv(alpha2.at(x))), two.omega().at(x)).expect("component arrow")
        })
        .collect();
    InternalNatTrans::new(&from, &to, comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::FinSpace;
    use crate::group::FinGroup;
    use crate::groupoid::{GroupoidHom, NatTrans};
    use crate::point::Point;

    fn ptz2() -> Arc<FinGroupoid> {
        Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)))
    }

    #[test]
    fn p_of_the_collapse_of_pt_z2_is_a_z2_bouquet() {
        let g = ptz2();
        let pt = Arc::new(FinSpace::discrete(vec![Point::atom("*")]).unwrap());
        let h = Arc::new(FinGroupoid::unit_groupoid(&pt));
        let iota = GroupoidHom::new(g.clone(), h, vec![0], vec![0, 0]).unwrap();
        let p = p_functor(&OverGroupoid::new(iota)).unwrap();
        assert_eq!(p.object.inner().n_obj(), 1);
        assert_eq!(p.object.inner().n_arr(), 2);
    }

    #[test]
    fn collapsing_the_sierpinski_space_is_rejected() {
        let s = Arc::new(FinSpace::sierpinski());
        let pt = Arc::new(FinSpace::discrete(vec![Point::atom("*")]).unwrap());
        let u = Arc::new(FinGroupoid::unit_groupoid(&s));
        let h = Arc::new(FinGroupoid::unit_groupoid(&pt));
        let phi = GroupoidHom::new(u, h, vec![0, 0], vec![0, 0]).unwrap();
        assert!(matches!(p_functor(&OverGroupoid::new(phi)), Err(Error::Precondition(_))));
    }

    #[test]
    fn twisting_by_g_gives_the_nontrivial_automorphism() {
        let h = ptz2();
        let over = OverGroupoid::identity(&h);
        let p = p_functor(&over).unwrap();
        let id = GroupoidHom::identity(&h);
        let alpha = NatTrans::new(id.clone(), id.clone(), vec![1]).unwrap();
        let cell = SliceCell::new(over.clone(), over.clone(), id, alpha).unwrap();
        let f = p_on_arrows(&cell, &p, &p).unwrap();
        let ident = p_on_arrows(&SliceCell::identity(&over), &p, &p).unwrap();
        assert!(ident.functor.is_isomorphism() && ident == InternalFunctor::identity(&p.object));
        assert_ne!(f, ident);
        assert!(f.then(&f).unwrap() == ident);
    }

    #[test]
    fn assembled_groupoids_satisfy_the_laws() {
        use crate::action::action_groupoid;
        use crate::corpus::{random_cover, random_instances};
        use crate::groupoid::cech_groupoid;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        for inst in random_instances(17, 8) {
            let h = Arc::new(inst.groupoid);
            let cech = cech_groupoid(&h, &random_cover(&mut rng, h.obj())).unwrap();
            for phi in [OverGroupoid::identity(&h), OverGroupoid::new(cech.projection)] {
                let p = p_functor(&phi).unwrap();
                p.object.inner().validate().unwrap();
                action_groupoid(&p.object).unwrap().groupoid().validate().unwrap();
            }
        }
    }
}
