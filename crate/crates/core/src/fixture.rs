//! JSON fixture files: one file holds a world of named spaces, groupoids,
//! sheaves, groupoid objects, homs and 2-cells, referring to each other by name.
//!
//! Point ids are the textual form of [`Point`]. Orders list the non-reflexive
//! pairs `[p, q]` meaning `p ≤ q`; `not_leq` lists pairs that must stay
//! unrelated after closing the relation.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::equivariant::{EquivariantSheaf, GroupoidObject, HSpace};
use crate::error::{Error, Result};
use crate::fintop::FinSpace;
use crate::groupoid::{FinGroupoid, GroupoidHom, NatTrans};
use crate::point::Point;

pub const SCHEMA: u32 = 1;

type Table = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub not_leq: Vec<(String, String)>,
}

/// A space given inline or by name from the `spaces` section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Named(String),
    Inline(SpaceDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub objects: SpaceRef,
    pub arrows: SpaceRef,
    pub s: Table,
    pub t: Table,
    pub unit: Table,
    pub inv: Table,
    pub compose: Vec<(String, String, String)>,
}

/// An equivariant sheaf over a named groupoid; `action` lists `[h, e, h·e]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafDoc {
    pub base: String,
    pub space: SpaceRef,
    pub moment: Table,
    pub action: Vec<(String, String, String)>,
}

/// A groupoid object in sheaves over `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub base: String,
    pub groupoid: GroupoidDoc,
    pub object_moment: Table,
    pub arrow_moment: Table,
    pub object_action: Vec<(String, String, String)>,
    pub arrow_action: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub dom: String,
    pub cod: String,
    pub objects: Table,
    pub arrows: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub src: String,
    pub dst: String,
    pub components: Table,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spaces: BTreeMap<String, SpaceDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groupoids: BTreeMap<String, GroupoidDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sheaves: BTreeMap<String, SheafDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, ObjectDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homs: BTreeMap<String, HomDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cells: BTreeMap<String, CellDoc>,
}

impl FixtureFile {
    pub fn new() -> FixtureFile {
        FixtureFile { schema: SCHEMA, ..FixtureFile::default() }
    }

    pub fn from_json(text: &str) -> Result<FixtureFile> {
        let file: FixtureFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {}", file.schema)));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture documents serialize")
    }

    pub fn load(&self) -> Result<World> {
        World::load(self)
    }
}

/// The validated contents of a fixture file.
#[derive(Clone, Debug, Default)]
pub struct World {
    pub spaces: BTreeMap<String, Arc<FinSpace>>,
    pub groupoids: BTreeMap<String, Arc<FinGroupoid>>,
    pub sheaves: BTreeMap<String, EquivariantSheaf>,
    pub objects: BTreeMap<String, GroupoidObject>,
    pub homs: BTreeMap<String, GroupoidHom>,
    pub cells: BTreeMap<String, NatTrans>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::UnknownName(format!("{kind} {name}")))
}

fn point(id: &str) -> Result<Point> {
    Point::parse(id)
}

fn pairs(table: &Table) -> Result<Vec<(Point, Point)>> {
    table.iter().map(|(a, b)| Ok((point(a)?, point(b)?))).collect()
}

fn index_table(dom: &FinSpace, cod: &FinSpace, table: &Table, what: &str) -> Result<Vec<usize>> {
    let mut v = vec![usize::MAX; dom.len()];
    for (a, b) in table {
        v[dom.idx(&point(a)?)?] = cod.idx(&point(b)?)?;
    }
    match v.iter().position(|&x| x == usize::MAX) {
        Some(i) => Err(Error::Parse(format!("{what} undefined at {}", dom.point(i)))),
        None => Ok(v),
    }
}

fn triples(
    list: &[(String, String, String)],
    a: &FinSpace,
    b: &FinSpace,
) -> Result<std::collections::HashMap<(usize, usize), usize>> {
    list.iter()
        .map(|(h, e, he)| Ok(((a.idx(&point(h)?)?, b.idx(&point(e)?)?), b.idx(&point(he)?)?)))
        .collect()
}

pub fn load_space(doc: &SpaceDoc) -> Result<FinSpace> {
    let points = doc.points.iter().map(|p| point(p)).collect::<Result<Vec<_>>>()?;
    let leq = doc.leq.iter().map(|(p, q)| Ok((point(p)?, point(q)?))).collect::<Result<Vec<_>>>()?;
    let space = FinSpace::from_points(points, &leq)?;
    for (p, q) in &doc.not_leq {
        if space.leq(space.idx(&point(p)?)?, space.idx(&point(q)?)?) {
            return Err(Error::invalid("FinSpace", "declared non-pair", format!("closure forces {p} <= {q}")));
        }
    }
    Ok(space)
}

impl World {
    fn space(&self, r: &SpaceRef) -> Result<Arc<FinSpace>> {
        match r {
            SpaceRef::Named(n) => lookup(&self.spaces, n, "space").cloned(),
            SpaceRef::Inline(doc) => Ok(Arc::new(load_space(doc)?)),
        }
    }

    fn groupoid_doc(&self, doc: &GroupoidDoc) -> Result<FinGroupoid> {
        let obj = self.space(&doc.objects)?;
        let arr = self.space(&doc.arrows)?;
        let compose = doc
            .compose
            .iter()
            .map(|(g, h, gh)| Ok((point(g)?, point(h)?, point(gh)?)))
            .collect::<Result<Vec<_>>>()?;
        FinGroupoid::from_points(
            obj,
            arr,
            &pairs(&doc.s)?,
            &pairs(&doc.t)?,
            &pairs(&doc.unit)?,
            &pairs(&doc.inv)?,
            &compose,
        )
    }

    pub fn load(file: &FixtureFile) -> Result<World> {
        let mut w = World::default();
        for (name, doc) in &file.spaces {
            w.spaces.insert(name.clone(), Arc::new(load_space(doc)?));
        }
        for (name, doc) in &file.groupoids {
            let g = w.groupoid_doc(doc)?;
            w.groupoids.insert(name.clone(), Arc::new(g));
        }
        for (name, doc) in &file.sheaves {
            let base = lookup(&w.groupoids, &doc.base, "groupoid")?.clone();
            let total = w.space(&doc.space)?;
            let moment = index_table(&total, base.obj(), &doc.moment, "moment")?;
            let act = triples(&doc.action, base.arr(), &total)?;
            let space = HSpace::new(base, total, moment, |h, e| act.get(&(h, e)).copied())?;
            w.sheaves.insert(name.clone(), EquivariantSheaf::new(space)?);
        }
        for (name, doc) in &file.objects {
            let base = lookup(&w.groupoids, &doc.base, "groupoid")?.clone();
            let inner = Arc::new(w.groupoid_doc(&doc.groupoid)?);
            let sheaf = |total: &Arc<FinSpace>, moment: &Table, action: &[(String, String, String)]| -> Result<_> {
                let moment = index_table(total, base.obj(), moment, "moment")?;
                let act = triples(action, base.arr(), total)?;
                EquivariantSheaf::new(HSpace::new(base.clone(), total.clone(), moment, |h, e| act.get(&(h, e)).copied())?)
            };
            let k0 = sheaf(inner.obj(), &doc.object_moment, &doc.object_action)?;
            let k1 = sheaf(inner.arr(), &doc.arrow_moment, &doc.arrow_action)?;
            w.objects.insert(name.clone(), GroupoidObject::new(inner, k0, k1)?);
        }
        for (name, doc) in &file.homs {
            let dom = lookup(&w.groupoids, &doc.dom, "groupoid")?.clone();
            let cod = lookup(&w.groupoids, &doc.cod, "groupoid")?.clone();
            let hom = GroupoidHom::from_points(dom, cod, &pairs(&doc.objects)?, &pairs(&doc.arrows)?)?;
            w.homs.insert(name.clone(), hom);
        }
        for (name, doc) in &file.cells {
            let src = lookup(&w.homs, &doc.src, "hom")?.clone();
            let dst = lookup(&w.homs, &doc.dst, "hom")?.clone();
            let comp = index_table(src.dom().obj(), src.cod().arr(), &doc.components, "component")?;
            w.cells.insert(name.clone(), NatTrans::new(src, dst, comp)?);
        }
        Ok(w)
    }

    pub fn groupoid(&self, name: &str) -> Result<&Arc<FinGroupoid>> {
        lookup(&self.groupoids, name, "groupoid")
    }

    pub fn sheaf(&self, name: &str) -> Result<&EquivariantSheaf> {
        lookup(&self.sheaves, name, "sheaf")
    }

    pub fn object(&self, name: &str) -> Result<&GroupoidObject> {
        lookup(&self.objects, name, "groupoid object")
    }

    pub fn hom(&self, name: &str) -> Result<&GroupoidHom> {
        lookup(&self.homs, name, "hom")
    }

    pub fn cell(&self, name: &str) -> Result<&NatTrans> {
        lookup(&self.cells, name, "2-cell")
    }
}

fn name(space: &FinSpace, i: usize) -> String {
    space.point(i).to_string()
}

fn table(dom: &FinSpace, cod: &FinSpace, f: impl Fn(usize) -> usize) -> Table {
    (0..dom.len()).map(|i| (name(dom, i), name(cod, f(i)))).collect()
}

pub fn space_doc(space: &FinSpace) -> SpaceDoc {
    SpaceDoc {
        points: (0..space.len()).map(|i| name(space, i)).collect(),
        leq: space.strict_pairs().map(|(p, q)| (name(space, p), name(space, q))).collect(),
        not_leq: Vec::new(),
    }
}

pub fn groupoid_doc(g: &FinGroupoid) -> GroupoidDoc {
    let (obj, arr) = (g.obj(), g.arr());
    GroupoidDoc {
        objects: SpaceRef::Inline(space_doc(obj)),
        arrows: SpaceRef::Inline(space_doc(arr)),
        s: table(arr, obj, |a| g.s(a)),
        t: table(arr, obj, |a| g.t(a)),
        unit: table(obj, arr, |x| g.unit(x)),
        inv: table(arr, arr, |a| g.inv(a)),
        compose: g.composable_pairs().map(|((a, b), c)| (name(arr, a), name(arr, b), name(arr, c))).collect(),
    }
}

fn action_list(space: &HSpace) -> Vec<(String, String, String)> {
    let (h, total) = (space.base(), space.total());
    (0..total.len())
        .flat_map(|e| {
            h.arrows_from(space.moment(e))
                .iter()
                .map(move |&a| (name(h.arr(), a), name(total, e), name(total, space.act(a, e))))
        })
        .collect()
}

pub fn sheaf_doc(sheaf: &EquivariantSheaf, base: &str) -> SheafDoc {
    let total = sheaf.total();
    SheafDoc {
        base: base.into(),
        space: SpaceRef::Inline(space_doc(total)),
        moment: table(total, sheaf.base().obj(), |e| sheaf.moment(e)),
        action: action_list(sheaf),
    }
}

pub fn object_doc(k: &GroupoidObject, base: &str) -> ObjectDoc {
    let (k0, k1) = (k.k0(), k.k1());
    let b = k.base().obj();
    ObjectDoc {
        base: base.into(),
        groupoid: groupoid_doc(k.inner()),
        object_moment: table(k0.total(), b, |e| k0.moment(e)),
        arrow_moment: table(k1.total(), b, |e| k1.moment(e)),
        object_action: action_list(k0),
        arrow_action: action_list(k1),
    }
}

pub fn hom_doc(f: &GroupoidHom, dom: &str, cod: &str) -> HomDoc {
    HomDoc {
        dom: dom.into(),
        cod: cod.into(),
        objects: table(f.dom().obj(), f.cod().obj(), |x| f.f0(x)),
        arrows: table(f.dom().arr(), f.cod().arr(), |a| f.f1(a)),
    }
}

pub fn cell_doc(alpha: &NatTrans, src: &str, dst: &str) -> CellDoc {
    let f = alpha.src();
    CellDoc {
        src: src.into(),
        dst: dst.into(),
        components: table(f.dom().obj(), f.cod().arr(), |x| alpha.at(x)),
    }
}
