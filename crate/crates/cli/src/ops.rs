use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use etale_core::action::{action_groupoid, realize_representable, sections_bijection};
use etale_core::corpus::{cover_by_minimal_opens, random_instances};
use etale_core::effective::{effective_part, germ_of_arrow, haefliger, ineffective_isotropy, is_effective};
use etale_core::equivariant::{pullback_sheaf, stalk, GroupoidObject};
use etale_core::error::{Error, Result};
use etale_core::fintop::{FinSpace, OpenSet};
use etale_core::fixture::{groupoid_doc, hom_doc, object_doc, sheaf_doc, FixtureFile, World};
use etale_core::gerbe::{
    ef_of_realization, gerbe_decomposition_check, gerbe_from_ineffective, is_bouquet, is_gerbe_stalkwise,
};
use etale_core::gets::{theta, xi, GerbedObject};
use etale_core::groupoid::{cech_groupoid, is_morita_equivalence, FinGroupoid, GroupoidHom, OverGroupoid};
use etale_core::suite::{run, CRITERIA};
use etale_core::Point;

use crate::{Construction, Failure, Property, Selection};

/// Short names accepted by `verify`, in criterion order.
pub const SUITES: [&str; 10] = [
    "adjunction",
    "sheaf-unit",
    "representables",
    "inverse-image",
    "effective-part",
    "gerbe-trichotomy",
    "ineffective-roundtrip",
    "isotropy-stalk",
    "gets-roundtrip",
    "ledger",
];

pub struct Input {
    file: FixtureFile,
    world: World,
}

pub fn load(path: &Path) -> std::result::Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file = FixtureFile::from_json(&text)?;
    let world = file.load()?;
    Ok(Input { file, world })
}

fn only_name<'a, T>(map: &'a std::collections::BTreeMap<String, T>, kind: &str) -> Result<&'a str> {
    let mut keys = map.keys();
    match (keys.next(), keys.next()) {
        (Some(k), None) => Ok(k),
        _ => Err(Error::Precondition(format!("name a {kind} with --{kind}"))),
    }
}

impl Input {
    fn groupoid_name<'a>(&'a self, sel: &'a Selection) -> Result<&'a str> {
        match &sel.groupoid {
            Some(n) => Ok(n),
            None => only_name(&self.world.groupoids, "groupoid"),
        }
    }

    fn groupoid(&self, sel: &Selection) -> Result<(String, Arc<FinGroupoid>)> {
        let name = self.groupoid_name(sel)?;
        Ok((name.to_string(), self.world.groupoid(name)?.clone()))
    }

    fn hom(&self, sel: &Selection) -> Result<(&str, &str, GroupoidHom)> {
        let name = match &sel.hom {
            Some(n) => n.as_str(),
            None => only_name(&self.world.homs, "hom")?,
        };
        let doc = &self.file.homs.get(name).ok_or_else(|| Error::UnknownName(format!("hom {name}")))?;
        Ok((&doc.dom, &doc.cod, self.world.hom(name)?.clone()))
    }

    fn object(&self, sel: &Selection) -> Result<(&str, GroupoidObject)> {
        if let Some(n) = &sel.sheaf {
            let doc = self.file.sheaves.get(n).ok_or_else(|| Error::UnknownName(format!("sheaf {n}")))?;
            return Ok((&doc.base, GroupoidObject::discrete(self.world.sheaf(n)?)));
        }
        let name = match &sel.object {
            Some(n) => n.as_str(),
            None => only_name(&self.world.objects, "object")?,
        };
        let doc = self.file.objects.get(name).ok_or_else(|| Error::UnknownName(format!("object {name}")))?;
        Ok((&doc.base, self.world.object(name)?.clone()))
    }
}

fn points(list: &str) -> Result<Vec<Point>> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(Point::parse).collect()
}

fn open_set(space: &FinSpace, sel: &Selection) -> Result<OpenSet> {
    match &sel.open {
        Some(list) => space.open_set_of(&points(list)?),
        None => Ok(space.whole()),
    }
}

fn point(space: &FinSpace, sel: &Selection) -> Result<usize> {
    let id = sel.point.as_deref().ok_or_else(|| Error::Precondition("name a point with --point".into()))?;
    space.idx(&Point::parse(id)?)
}

fn names(space: &FinSpace, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| space.point(i).to_string()).collect()
}

fn shape(g: &FinGroupoid) -> Value {
    json!({ "objects": g.n_obj(), "arrows": g.n_arr() })
}

fn emit(file: FixtureFile, report: Value) -> Value {
    json!({ "result": file, "report": report })
}

pub fn check(property: Property, input: &Input, sel: &Selection) -> std::result::Result<Value, Failure> {
    let value = match property {
        Property::Etale => {
            let (_, g) = input.groupoid(sel)?;
            json!({ "etale": g.is_etale() })
        }
        Property::Effective => {
            let (_, g) = input.groupoid(sel)?;
            let e = is_effective(&g)?;
            let witness: Vec<String> = e.witness.iter().flat_map(|&(a, b)| names(g.arr(), [a, b])).collect();
            json!({ "effective": e.effective, "witness": witness })
        }
        Property::Morita => {
            let (_, _, phi) = input.hom(sel)?;
            let m = is_morita_equivalence(&phi);
            json!({
                "morita": m.is_equivalence(),
                "essentially_surjective": m.essentially_surjective(),
                "fully_faithful": m.fully_faithful,
                "failure": m.comparison_failure,
            })
        }
        Property::Bouquet => {
            let (_, k) = input.object(sel)?;
            let b = is_bouquet(&k);
            json!({
                "bouquet": b.is_bouquet(),
                "moment_surjective": b.moment_surjective,
                "pairs_surjective": b.pairs_surjective,
                "missing": b.missing,
            })
        }
        Property::Gerbe => {
            if sel.hom.is_some() || (input.world.objects.is_empty() && sel.sheaf.is_none()) {
                let (_, _, rho) = input.hom(sel)?;
                let d = gerbe_decomposition_check(&rho)?;
                json!({
                    "gerbe_over_target": d.gerbe_over_target,
                    "gerbe_over_effective": d.gerbe_over_effective,
                    "full": d.full,
                    "effective_local_equivalence": d.effective_local_equivalence,
                })
            } else {
                let (_, k) = input.object(sel)?;
                json!({ "gerbe": is_gerbe_stalkwise(&k)?, "bouquet": is_bouquet(&k).is_bouquet() })
            }
        }
        Property::Full => {
            let (_, _, phi) = input.hom(sel)?;
            let failure = phi.fullness_failure().map(|(x, y, a)| {
                json!({ "x": phi.dom().obj().point(x).to_string(), "y": phi.dom().obj().point(y).to_string(),
                        "arrow": phi.cod().arr().point(a).to_string() })
            });
            json!({ "full": phi.is_full(), "failure": failure })
        }
    };
    Ok(value)
}

pub fn compute(what: Construction, input: &Input, sel: &Selection) -> std::result::Result<Value, Failure> {
    let mut out = FixtureFile::new();
    let report = match what {
        Construction::Haefliger => {
            let space = match &sel.space {
                Some(n) => input.world.spaces.get(n).cloned().ok_or_else(|| Error::UnknownName(format!("space {n}")))?,
                None => input.groupoid(sel)?.1.obj().clone(),
            };
            let ha = haefliger(&space)?;
            out.groupoids.insert("Ha".into(), groupoid_doc(&ha.groupoid));
            shape(&ha.groupoid)
        }
        Construction::EffectivePart => {
            let (name, g) = input.groupoid(sel)?;
            let ef = effective_part(&g)?;
            let units = (0..ef.groupoid.n_arr()).all(|a| ef.groupoid.is_unit(a));
            out.groupoids.insert(name.clone(), groupoid_doc(&g));
            out.groupoids.insert("Ef".into(), groupoid_doc(&ef.groupoid));
            out.homs.insert("iota".into(), hom_doc(&ef.iota, &name, "Ef"));
            json!({ "effective_part": shape(&ef.groupoid), "unit_groupoid": units, "topologies_agree": ef.topologies_agree })
        }
        Construction::ActionGroupoid => {
            let (base, k) = input.object(sel)?;
            let ag = action_groupoid(&k)?;
            out.groupoids.insert(base.into(), groupoid_doc(k.base()));
            out.groupoids.insert("realization".into(), groupoid_doc(ag.groupoid()));
            out.homs.insert("theta".into(), hom_doc(ag.theta(), "realization", base));
            json!({ "realization": shape(ag.groupoid()), "etale_over_base": ag.over.is_etale() })
        }
        Construction::Sections => {
            let (_, _, phi) = input.hom(sel)?;
            let u = open_set(phi.cod().obj(), sel)?;
            let b = sections_bijection(&OverGroupoid::new(phi.clone()), &u)?;
            json!({
                "open": names(phi.cod().obj(), u.members().iter().copied()),
                "cells": b.cells.len(),
                "two_cells": b.two_cells.len(),
                "equivariant_maps": b.object_maps.len(),
                "arrow_maps": b.arrow_maps.len(),
                "bijective": b.is_bijective(),
            })
        }
        Construction::Cech => {
            let (name, g) = input.groupoid(sel)?;
            let centers = match &sel.centers {
                Some(list) => points(list)?.iter().map(|p| g.obj().idx(p)).collect::<Result<Vec<_>>>()?,
                None => (0..g.n_obj()).collect(),
            };
            let cover = cover_by_minimal_opens(g.obj(), &centers)
                .ok_or_else(|| Error::Precondition("the minimal opens of the centers do not cover".into()))?;
            let cech = cech_groupoid(&g, &cover)?;
            out.groupoids.insert(name.clone(), groupoid_doc(&g));
            out.groupoids.insert("cech".into(), groupoid_doc(&cech.groupoid));
            out.homs.insert("projection".into(), hom_doc(&cech.projection, "cech", &name));
            json!({ "cech": shape(&cech.groupoid), "morita": is_morita_equivalence(&cech.projection).is_equivalence() })
        }
        Construction::Pullback => {
            let (dom, _, phi) = input.hom(sel)?;
            let name = sel.sheaf.as_deref().ok_or_else(|| Error::Precondition("name a sheaf with --sheaf".into()))?;
            let pulled = pullback_sheaf(&phi, input.world.sheaf(name)?)?;
            out.groupoids.insert(dom.into(), groupoid_doc(phi.dom()));
            out.sheaves.insert("pullback".into(), sheaf_doc(&pulled.sheaf, dom));
            json!({ "points": pulled.sheaf.total().len() })
        }
        Construction::Stalk => {
            let (_, k) = input.object(sel)?;
            let x = point(k.base().obj(), sel)?;
            let st = stalk(&k, x)?;
            out.groupoids.insert("stalk".into(), groupoid_doc(&st.groupoid));
            json!({ "point": sel.point, "stalk": shape(&st.groupoid), "components": st.groupoid.components().len() })
        }
        Construction::RealizeRepresentable => {
            let (_, g) = input.groupoid(sel)?;
            let u = open_set(g.obj(), sel)?;
            let w = realize_representable(&g, &u)?;
            out.groupoids.insert("realization".into(), groupoid_doc(w.realization.groupoid()));
            json!({
                "open": names(g.obj(), u.members().iter().copied()),
                "realization": shape(w.realization.groupoid()),
                "morita_to_open": w.morita.is_equivalence(),
            })
        }
        Construction::Theta => {
            let (name, g) = input.groupoid(sel)?;
            let obj = theta(&g)?;
            out.groupoids.insert(name.clone(), groupoid_doc(&g));
            out.groupoids.insert("base".into(), groupoid_doc(&obj.base));
            out.homs.insert("sigma".into(), hom_doc(obj.sigma.structure(), &name, "base"));
            json!({ "base": shape(&obj.base), "total": shape(obj.total()) })
        }
        Construction::Xi => {
            let (dom, _, sigma) = input.hom(sel)?;
            let obj = GerbedObject::new(OverGroupoid::new(sigma))?;
            let total = xi(&obj);
            out.groupoids.insert(dom.into(), groupoid_doc(&total));
            json!({ "total": shape(&total) })
        }
        Construction::GerbeFromIneffective => {
            let (_, g) = input.groupoid(sel)?;
            let k = gerbe_from_ineffective(&g)?;
            out.groupoids.insert("Ef".into(), groupoid_doc(&k.effective.groupoid));
            out.objects.insert("bouquet".into(), object_doc(k.object(), "Ef"));
            json!({ "bouquet": k.bouquet.is_bouquet(), "object": shape(k.object().inner()) })
        }
        Construction::EfOfRealization => {
            let (_, h) = input.groupoid(sel)?;
            let (_, b) = input.object(sel)?;
            let r = ef_of_realization(&h, &b)?;
            out.groupoids.insert("effective".into(), groupoid_doc(r.kappa.dom()));
            out.groupoids.insert("cech".into(), groupoid_doc(r.kappa.cod()));
            out.homs.insert("kappa".into(), hom_doc(&r.kappa, "effective", "cech"));
            out.homs.insert("kappa_inverse".into(), hom_doc(&r.inverse, "cech", "effective"));
            json!({ "isomorphism": r.is_isomorphism(), "effective": shape(r.kappa.dom()) })
        }
        Construction::IneffectiveIsotropy => {
            let (_, g) = input.groupoid(sel)?;
            let x = point(g.obj(), sel)?;
            let group = ineffective_isotropy(&g, x)?;
            let unit_germ = germ_of_arrow(&g, g.unit(x))?;
            let mut arrows = Vec::new();
            for a in g.isotropy(x) {
                if germ_of_arrow(&g, a)? == unit_germ {
                    arrows.push(g.arr().point(a).to_string());
                }
            }
            json!({ "point": sel.point, "order": group.order(), "abelian": group.is_abelian(), "arrows": arrows })
        }
    };
    Ok(emit(out, report))
}

fn suite_index(name: &str) -> Result<Option<usize>> {
    if name == "all" {
        return Ok(None);
    }
    if let Ok(n) = name.parse::<usize>() {
        if (1..=CRITERIA.len()).contains(&n) {
            return Ok(Some(n));
        }
    }
    SUITES
        .iter()
        .zip(CRITERIA)
        .position(|(slug, long)| *slug == name || long == name)
        .map(|i| Some(i + 1))
        .ok_or_else(|| Error::UnknownName(format!("suite {name}; expected all, 1-10 or one of {}", SUITES.join(", "))))
}

pub fn verify(name: &str, seed: u64, instances: usize) -> std::result::Result<Value, Failure> {
    let only = suite_index(name)?;
    let report = run(seed, instances, only);
    let mut value = serde_json::to_value(&report).expect("reports serialize");
    value["passed"] = json!(report.passed());
    if report.passed() {
        return Ok(value);
    }
    let corpus = random_instances(seed, instances);
    let counterexamples: Vec<Value> = report
        .criteria
        .iter()
        .filter(|c| !c.passed())
        .map(|c| match c.counterexample {
            Some(i) => {
                let mut file = FixtureFile::new();
                file.groupoids.insert("G".into(), groupoid_doc(&corpus[i].groupoid));
                json!({ "criterion": c.id, "instance": i, "label": corpus[i].label, "fixture": file })
            }
            None => json!({ "criterion": c.id, "fixture": "named fixtures", "failure": c.failures.first() }),
        })
        .collect();
    value["counterexamples"] = json!(counterexamples);
    Err(Failure::Property(value))
}
