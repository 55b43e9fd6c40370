use std::sync::Arc;

use super::{EquivariantMap, EquivariantSheaf, HSpace};
use crate::error::{Error, Result};
use crate::fintop::{FinSpace, TupleSpace};
use crate::group::FinGroup;
use crate::groupoid::{FinGroupoid, GroupoidHom, NatTrans};
use crate::point::Point;

/// A groupoid object in the classifying topos of `base`: an étale groupoid
/// `K` whose object and arrow spaces are equivariant sheaves and whose
/// structure maps are equivariant.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupoidObject {
    base: Arc<FinGroupoid>,
    inner: Arc<FinGroupoid>,
    k0: EquivariantSheaf,
    k1: EquivariantSheaf,
}

const S: &str = "GroupoidObject";

impl GroupoidObject {
    pub fn new(inner: Arc<FinGroupoid>, k0: EquivariantSheaf, k1: EquivariantSheaf) -> Result<GroupoidObject> {
        let base = k0.base().clone();
        if **k1.base() != *base {
            return Err(Error::invalid(S, "same base", "K0 and K1 over different groupoids"));
        }
        if **k0.total() != **inner.obj() || **k1.total() != **inner.arr() {
            return Err(Error::invalid(S, "shape", "sheaf totals differ from the groupoid spaces"));
        }
        let k = &inner;
        for a in 0..k.n_arr() {
            if k0.moment(k.s(a)) != k1.moment(a) || k0.moment(k.t(a)) != k1.moment(a) {
                return Err(Error::invalid(S, "moment commutes with s, t", k.arr().point(a).to_string()));
            }
            for &h in base.arrows_from(k1.moment(a)) {
                let ha = k1.act(h, a);
                if k.s(ha) != k0.act(h, k.s(a)) || k.t(ha) != k0.act(h, k.t(a)) {
                    return Err(Error::invalid(S, "s, t equivariant", k.arr().point(a).to_string()));
                }
                if k1.act(h, k.inv(a)) != k.inv(ha) {
                    return Err(Error::invalid(S, "inverse equivariant", k.arr().point(a).to_string()));
                }
            }
        }
        for x in 0..k.n_obj() {
            if k1.moment(k.unit(x)) != k0.moment(x) {
                return Err(Error::invalid(S, "moment commutes with s, t", k.obj().point(x).to_string()));
            }
            for &h in base.arrows_from(k0.moment(x)) {
                if k1.act(h, k.unit(x)) != k.unit(k0.act(h, x)) {
                    return Err(Error::invalid(S, "unit equivariant", k.obj().point(x).to_string()));
                }
            }
        }
        for ((a, b), ab) in k.composable_pairs() {
            for &h in base.arrows_from(k1.moment(a)) {
                if k1.act(h, ab) != k.compose(k1.act(h, a), k1.act(h, b)) {
                    return Err(Error::invalid(S, "composition equivariant", k.arr().point(ab).to_string()));
                }
            }
        }
        Ok(GroupoidObject { base, inner, k0, k1 })
    }

    /// A sheaf viewed as a groupoid object with only identity arrows.
    pub fn discrete(sheaf: &EquivariantSheaf) -> GroupoidObject {
        let inner = Arc::new(FinGroupoid::unit_groupoid(sheaf.total()));
        GroupoidObject { base: sheaf.base().clone(), inner, k0: sheaf.clone(), k1: sheaf.clone() }
    }

    /// The terminal object: `H0` acted on through targets.
    pub fn terminal(base: &Arc<FinGroupoid>) -> GroupoidObject {
        let sheaf = terminal_sheaf(base);
        GroupoidObject::discrete(&sheaf)
    }

    /// The bundle of groups `H0 × A → H0` with `h·(x, a) = (t h, ρ(h)(a))`,
    /// where `twist(h)` gives `ρ(h)` as a permutation of the elements.
    pub fn group_bundle(
        base: &Arc<FinGroupoid>,
        group: &FinGroup,
        twist: impl Fn(usize) -> Vec<usize>,
    ) -> Result<GroupoidObject> {
        let a = Arc::new(FinSpace::discrete(group.elements().to_vec())?);
        let elem = |i: usize| a.index_of(&group.elements()[i]).expect("group element");
        let ts = TupleSpace::build(
            &[base.obj(), &a],
            (0..base.n_obj()).flat_map(|x| (0..group.order()).map(move |g| vec![x, g])),
        );
        let n = ts.len();
        let group_of = |i: usize| {
            let g = ts.comp(i, 1);
            (0..group.order()).find(|&j| elem(j) == g).expect("group element")
        };
        let find = |x: usize, j: usize| ts.find(&[x, elem(j)]).expect("bundle arrow");
        let k1_total = ts.space().clone();
        let over: Vec<usize> = (0..n).map(|i| ts.comp(i, 0)).collect();
        let inner = FinGroupoid::new(crate::groupoid::GroupoidParts {
            obj: base.obj().clone(),
            arr: k1_total.clone(),
            src: over.clone(),
            tgt: over.clone(),
            unit: (0..base.n_obj()).map(|x| find(x, group.identity())).collect(),
            inv: (0..n).map(|i| find(over[i], group.inverse(group_of(i)))).collect(),
            comp: |p, q| (over[p] == over[q]).then(|| find(over[p], group.mul(group_of(p), group_of(q)))),
        })?;
        for h in 0..base.n_arr() {
            let p = twist(h);
            let ok = p.len() == group.order()
                && (0..group.order()).all(|x| {
                    (0..group.order()).all(|y| p[group.mul(x, y)] == group.mul(p[x], p[y]))
                });
            if !ok {
                return Err(Error::invalid(S, "twist by automorphisms", base.arr().point(h).to_string()));
            }
        }
        let k0 = terminal_sheaf(base);
        let k1 = EquivariantSheaf::new(HSpace::new(base.clone(), k1_total, over.clone(), |h, i| {
            Some(find(base.t(h), twist(h)[group_of(i)]))
        })?)?;
        GroupoidObject::new(Arc::new(inner), k0, k1)
    }

    pub fn base(&self) -> &Arc<FinGroupoid> {
        &self.base
    }

    pub fn inner(&self) -> &Arc<FinGroupoid> {
        &self.inner
    }

    pub fn k0(&self) -> &EquivariantSheaf {
        &self.k0
    }

    pub fn k1(&self) -> &EquivariantSheaf {
        &self.k1
    }

    pub fn point_name(&self, a: usize) -> &Point {
        self.inner.arr().point(a)
    }
}

/// A map of groupoid objects: equivariant maps on objects and arrows that
/// together form a functor.
#[derive(Clone, Debug, PartialEq)]
pub struct InternalFunctor {
    pub dom: GroupoidObject,
    pub cod: GroupoidObject,
    pub on_obj: EquivariantMap,
    pub on_arr: EquivariantMap,
    pub functor: GroupoidHom,
}

impl InternalFunctor {
    pub fn new(dom: &GroupoidObject, cod: &GroupoidObject, f0: Vec<usize>, f1: Vec<usize>) -> Result<InternalFunctor> {
        let on_obj = EquivariantMap::new(dom.k0.space().clone(), cod.k0.space().clone(), f0.clone())?;
        let on_arr = EquivariantMap::new(dom.k1.space().clone(), cod.k1.space().clone(), f1.clone())?;
        let functor = GroupoidHom::new(dom.inner.clone(), cod.inner.clone(), f0, f1)?;
        Ok(InternalFunctor { dom: dom.clone(), cod: cod.clone(), on_obj, on_arr, functor })
    }

    pub fn identity(k: &GroupoidObject) -> InternalFunctor {
        InternalFunctor {
            dom: k.clone(),
            cod: k.clone(),
            on_obj: EquivariantMap::identity(k.k0.space()),
            on_arr: EquivariantMap::identity(k.k1.space()),
            functor: GroupoidHom::identity(&k.inner),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &InternalFunctor) -> Result<InternalFunctor> {
        Ok(InternalFunctor {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            on_obj: self.on_obj.then(&next.on_obj)?,
            on_arr: self.on_arr.then(&next.on_arr)?,
            functor: self.functor.then(&next.functor)?,
        })
    }
}

/// A transformation of internal functors whose component `K0 → L1` is equivariant.
#[derive(Clone, Debug, PartialEq)]
pub struct InternalNatTrans {
    pub src: InternalFunctor,
    pub dst: InternalFunctor,
    pub component: EquivariantMap,
    pub nat: NatTrans,
}

impl InternalNatTrans {
    pub fn new(src: &InternalFunctor, dst: &InternalFunctor, comp: Vec<usize>) -> Result<InternalNatTrans> {
        let component = EquivariantMap::new(src.dom.k0.space().clone(), src.cod.k1.space().clone(), comp.clone())?;
        let nat = NatTrans::new(src.functor.clone(), dst.functor.clone(), comp)?;
        Ok(InternalNatTrans { src: src.clone(), dst: dst.clone(), component, nat })
    }
}

pub(crate) fn terminal_sheaf(base: &Arc<FinGroupoid>) -> EquivariantSheaf {
    let space = HSpace::new(base.clone(), base.obj().clone(), (0..base.n_obj()).collect(), |h, _| Some(base.t(h)))
        .expect("terminal space");
    EquivariantSheaf::new(space).expect("identity moment is étale")
}
