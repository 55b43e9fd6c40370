use std::collections::HashMap;
use std::sync::Arc;

use super::{equivariant_maps, representable_sheaf, EquivariantMap, GroupoidObject};
use crate::error::Result;
use crate::fintop::FinSpace;
use crate::groupoid::{FinGroupoid, GroupoidHom, GroupoidParts};
use crate::point::Point;

/// The stalk of a groupoid object at `x`: maps out of `m_{U_x}` into `K0`
/// and `K1`, with the Yoneda comparison to the fiber of `K` over `x`.
#[derive(Clone, Debug)]
pub struct Stalk {
    pub point: usize,
    pub groupoid: Arc<FinGroupoid>,
    pub objects: Vec<EquivariantMap>,
    pub arrows: Vec<EquivariantMap>,
    /// Evaluation at `1_x`, onto the fiber groupoid.
    pub yoneda: GroupoidHom,
}

pub fn stalk(k: &GroupoidObject, x: usize) -> Result<Stalk> {
    let base = k.base();
    let inner = k.inner();
    let m = representable_sheaf(base, &base.obj().minimal_open(x))?;
    let objects = equivariant_maps(m.sheaf.space(), k.k0().space());
    let arrows = equivariant_maps(m.sheaf.space(), k.k1().space());
    let name = |f: &EquivariantMap, space: &FinSpace| Point::tuple(f.map().iter().map(|&i| space.point(i).clone()));
    let obj_space = Arc::new(FinSpace::discrete(objects.iter().map(|f| name(f, inner.obj())).collect())?);
    let arr_space = Arc::new(FinSpace::discrete(arrows.iter().map(|f| name(f, inner.arr())).collect())?);
    // discrete spaces sort their points; reorder the maps to match
    let objects = reorder(objects, &obj_space, inner.obj());
    let arrows = reorder(arrows, &arr_space, inner.arr());
    let obj_index: HashMap<Vec<usize>, usize> = objects.iter().enumerate().map(|(i, f)| (f.map().to_vec(), i)).collect();
    let arr_index: HashMap<Vec<usize>, usize> = arrows.iter().enumerate().map(|(i, f)| (f.map().to_vec(), i)).collect();
    let pointwise = |f: &EquivariantMap, op: &dyn Fn(usize) -> usize| f.map().iter().map(|&a| op(a)).collect::<Vec<_>>();
    let groupoid = FinGroupoid::new(GroupoidParts {
        obj: obj_space,
        arr: arr_space,
        src: arrows.iter().map(|f| obj_index[&pointwise(f, &|a| inner.s(a))]).collect(),
        tgt: arrows.iter().map(|f| obj_index[&pointwise(f, &|a| inner.t(a))]).collect(),
        unit: objects.iter().map(|f| arr_index[&pointwise(f, &|o| inner.unit(o))]).collect(),
        inv: arrows.iter().map(|f| arr_index[&pointwise(f, &|a| inner.inv(a))]).collect(),
        comp: |a: usize, b: usize| {
            let v: Vec<usize> =
                arrows[a].map().iter().zip(arrows[b].map()).map(|(&p, &q)| inner.compose(p, q)).collect();
            arr_index.get(&v).copied()
        },
    })?;
    let groupoid = Arc::new(groupoid);
    let fiber = fiber_groupoid(k, x)?;
    let at_unit = m.index_of(base.unit(x)).expect("unit in m_U");
    let pos0: HashMap<usize, usize> = fiber.1.on_obj().iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let pos1: HashMap<usize, usize> = fiber.1.on_arr().iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let yoneda = GroupoidHom::new(
        groupoid.clone(),
        fiber.0,
        objects.iter().map(|f| pos0[&f.apply(at_unit)]).collect(),
        arrows.iter().map(|f| pos1[&f.apply(at_unit)]).collect(),
    )?;
    Ok(Stalk { point: x, groupoid, objects, arrows, yoneda })
}

fn reorder(maps: Vec<EquivariantMap>, space: &FinSpace, names: &FinSpace) -> Vec<EquivariantMap> {
    let mut slots: Vec<Option<EquivariantMap>> = vec![None; maps.len()];
    for f in maps {
        let p = Point::tuple(f.map().iter().map(|&i| names.point(i).clone()));
        let i = space.index_of(&p).expect("stalk point");
        slots[i] = Some(f);
    }
    slots.into_iter().map(|f| f.expect("bijective naming")).collect()
}

/// The full subgroupoid of `K` on `μ0^{-1}(x)`, with its inclusion.
pub fn fiber_groupoid(k: &GroupoidObject, x: usize) -> Result<(Arc<FinGroupoid>, GroupoidHom)> {
    k.inner().restrict_to(&k.k0().fiber(x))
}
