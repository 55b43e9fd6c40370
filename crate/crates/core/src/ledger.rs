//! Worked example values on the named fixtures, computed by the library and
//! compared against a frozen table.

use std::sync::Arc;

use crate::action::{
    action_groupoid, epsilon_witness, inverse_image_compat, p_functor, realize_representable, sections_bijection,
    theta_prime,
};
use crate::corpus::{cover_by_minimal_opens, d2, fixtures, indiscrete_z2, swap_groupoid};
use crate::effective::{
    ef_on_hom, effective_part, haefliger, ineffective_isotropy, is_effective, iota_tilde, same_germ_in_action_groupoid,
};
use crate::equivariant::{
    equivariant_maps, m_on_arrows, pullback_sheaf, representable_sheaf, site_hom, stalk, EquivariantSheaf,
    GroupoidObject, HSpace,
};
use crate::error::Result;
use crate::fintop::{fibered_product, germ_of, CMap, FinSpace, LocalMap, OpenSet};
use crate::gerbe::{
    ef_of_realization, gerbe_decomposition_check, gerbe_from_ineffective, is_bouquet, is_gerbe_stalkwise,
    stalk_vs_ineffective_isotropy,
};
use crate::gets::{
    compose_gerbed, pullback_gerbe, theta, theta_on_2cell, theta_on_map, theta_xi_comparison, xi, xi_on_2cell,
    xi_on_map, GerbedObject,
};
use crate::group::FinGroup;
use crate::groupoid::{
    cech_groupoid, is_equivalent_to_space, is_morita_equivalence, weak_pullback, FinGroupoid, GroupoidHom, NatTrans,
    OverGroupoid,
};
use crate::point::Point;
use crate::suite::natural_automorphisms;

/// Expected values; keys are stable identifiers used by the CLI and tests.
pub const FROZEN: &[(&str, &str)] = &[
    ("space.minimal_open.S.c", "c,o"),
    ("space.minimal_open.S.o", "o"),
    ("space.etale.D2_to_pt", "true"),
    ("space.etale.S_to_pt", "false"),
    ("space.open.c_in_S", "false"),
    ("space.fibered.D2_pt_D2", "points=4 discrete=true"),
    ("space.fibered.o_S_S", "points=1"),
    ("space.germ.swap_at_a", "a->b"),
    ("space.germ.agree_at_a", "equal=true"),
    ("groupoid.etale.ptZ2", "true"),
    ("groupoid.etale.indiscrete_Z2", "false"),
    ("groupoid.cech.unitS", "objects=3 arrows=5 nonidentity=2"),
    ("groupoid.cech.ptZ2", "objects=2 arrows=8"),
    ("groupoid.morita.cech_projection", "true"),
    ("groupoid.morita.ptZ2_to_pt", "false"),
    ("groupoid.weak_pullback.pt_ptZ2_pt", "objects=2 arrows=2"),
    ("groupoid.weak_pullback.fiber_E", "connected=true isotropy=2"),
    ("groupoid.space.pair_D2", "true quotient=1"),
    ("groupoid.space.ptZ2", "false"),
    ("site.m.ptZ2_pt", "total=2 g_swaps=true"),
    ("site.m.swap_a", "total=2 moments=a,b"),
    ("site.hom.ptZ2_pt_pt", "2"),
    ("site.hom.swap_a_b", "1"),
    ("site.m_on_arrows.ptZ2_g", "swap=true"),
    ("site.maps.swap_a_b", "1"),
    ("sheaf.pullback.iota_B_E0", "points=2 free=false"),
    ("stalk.E", "objects=1 arrows=2"),
    ("stalk.D2_over_pt", "objects=2 arrows=2"),
    ("action.pt_Z2", "objects=1 arrows=2"),
    ("action.ptZ2_m_pt", "objects=2 arrows=4 pair=true"),
    ("action.P_iota_B", "objects=1 arrows=2"),
    ("action.epsilon_iota_B", "objects=1 arrows=2"),
    ("action.epsilon_theta_m_pt", "valid=true"),
    ("action.realize.ptZ2_pt", "arrows=4 morita=true"),
    ("action.realize.swap_a", "points=2 morita=true"),
    ("action.inverse_image.ptZ2_id_pt", "objects=4 arrows=16"),
    ("action.inverse_image.D2_pt", "objects=2 arrows=2"),
    ("action.sections.iota_B_pt", "objects=1 arrows=2"),
    ("action.sections.swap_id_a", "objects=2 arrows=4"),
    ("effective.haefliger.D2", "arrows=4"),
    ("effective.haefliger.S", "arrows=2"),
    ("effective.iota_tilde.ptZ2", "identity=true"),
    ("effective.iota_tilde.swap", "injective=true"),
    ("effective.part.ptZ2", "objects=1 arrows=1"),
    ("effective.is_effective.swap", "true"),
    ("effective.is_effective.ptZ2", "false witness=e,g"),
    ("effective.isotropy.ptZ2", "2"),
    ("effective.isotropy.swap_a", "1"),
    ("effective.ef_on_hom.swap_to_ptZ2", "identity=true"),
    ("effective.same_germ.E", "germ=true theta_prime=true"),
    ("gerbe.bouquet.E", "true"),
    ("gerbe.bouquet.o_over_S", "false"),
    ("gerbe.stalkwise.E", "true"),
    ("gerbe.stalkwise.two_points", "false"),
    ("gerbe.full.theta_E", "true"),
    ("gerbe.full.D2_to_pt", "false"),
    ("gerbe.ef_realization.pt_E", "arrows=1 iso=true"),
    ("gerbe.ef_realization.S_Z2", "arrows=2 iso=true"),
    ("gerbe.from_ineffective.ptZ2", "objects=1 arrows=2"),
    ("gerbe.from_ineffective.ptZ2_swap", "objects=5 arrows=10 bouquet=true"),
    ("gerbe.decomposition.theta_E", "true,true,true"),
    ("gerbe.decomposition.iota_B", "true,true,true"),
    ("gerbe.decomposition.pt_in_ptZ2", "false,true,false"),
    ("gerbe.isotropy.E", "2,2,2"),
    ("gets.pullback.o_in_S", "objects=1 arrows=2"),
    ("gets.theta.ptZ2", "objects=1 arrows=1"),
    ("gets.xi_theta.ptZ2", "identity=true"),
    ("gets.theta_xi.pt_E", "morita=true"),
    ("gets.automorphisms.ptZ2", "count=2 law=Z2"),
    ("gets.twist.ptZ2", "nontrivial=true"),
    ("gets.associativity.chain", "true"),
    ("gets.two_cells.ptZ2_over_pt", "2"),
    ("cli.check_effective.ptZ2", r#"{"effective":false,"witness":["e","g"]}"#),
    ("cli.effective_part.ptZ2", "unit=true"),
];

fn pt_space() -> Arc<FinSpace> {
    Arc::new(FinSpace::singleton())
}

fn s_space() -> Arc<FinSpace> {
    Arc::new(FinSpace::sierpinski())
}

fn unit(space: &Arc<FinSpace>) -> Arc<FinGroupoid> {
    Arc::new(FinGroupoid::unit_groupoid(space))
}

fn ptz2() -> Arc<FinGroupoid> {
    Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)))
}

fn to_point(dom: &Arc<FinGroupoid>, pt: &Arc<FinGroupoid>) -> Result<GroupoidHom> {
    GroupoidHom::new(dom.clone(), pt.clone(), vec![0; dom.n_obj()], vec![0; dom.n_arr()])
}

fn names(space: &FinSpace, members: &[usize]) -> String {
    let mut v: Vec<String> = members.iter().map(|&i| space.point(i).to_string()).collect();
    v.sort();
    v.join(",")
}

fn counts(g: &FinGroupoid) -> String {
    format!("objects={} arrows={}", g.n_obj(), g.n_arr())
}

fn open_named(space: &FinSpace, pts: &[&str]) -> Result<OpenSet> {
    let p: Vec<Point> = pts.iter().map(|s| Point::atom(s)).collect();
    space.open_set_of(&p)
}

fn z2_bundle(base: &Arc<FinGroupoid>) -> Result<GroupoidObject> {
    GroupoidObject::group_bundle(base, &FinGroup::cyclic(2), |_| vec![0, 1])
}

fn two_point_sheaf() -> Result<EquivariantSheaf> {
    EquivariantSheaf::new(HSpace::new(unit(&pt_space()), d2(), vec![0, 0], |_, e| Some(e))?)
}

/// The cover `{o} ⊔ S → S`.
fn s_cover() -> CMap {
    let s = s_space();
    let o = s.idx(&Point::atom("o")).expect("o");
    let c = s.idx(&Point::atom("c")).expect("c");
    cover_by_minimal_opens(&s, &[o, c]).expect("cover of S")
}

/// `pt ⊔ pt → pt`.
fn pt_cover() -> CMap {
    cover_by_minimal_opens(&pt_space(), &[0, 0]).expect("double cover of a point")
}

fn nat_trans_count(f: &GroupoidHom) -> usize {
    let h = f.cod();
    let n = f.dom().n_obj();
    let mut count = 0;
    let mut comp = Vec::with_capacity(n);
    fn go(f: &GroupoidHom, comp: &mut Vec<usize>, count: &mut usize) {
        let g = f.dom();
        let h = f.cod();
        if comp.len() == g.n_obj() {
            *count += NatTrans::new(f.clone(), f.clone(), comp.clone()).is_ok() as usize;
            return;
        }
        let x = comp.len();
        for a in h.hom(f.f0(x), f.f0(x)) {
            comp.push(a);
            go(f, comp, count);
            comp.pop();
        }
    }
    let _ = h;
    go(f, &mut comp, &mut count);
    count
}

fn value(key: &str) -> Result<String> {
    let f = fixtures();
    let pt = unit(&pt_space());
    let b = ptz2();
    let swap = swap_groupoid();
    let s = s_space();
    let iota_b = effective_part(&b)?.iota;
    Ok(match key {
        "space.minimal_open.S.c" => names(&s, s.minimal_open_of(&Point::atom("c"))?.members()),
        "space.minimal_open.S.o" => names(&s, s.minimal_open_of(&Point::atom("o"))?.members()),
        "space.etale.D2_to_pt" => CMap::new(d2(), pt_space(), vec![0, 0])?.is_etale().to_string(),
        "space.etale.S_to_pt" => CMap::new(s.clone(), pt_space(), vec![0, 0])?.is_etale().to_string(),
        "space.open.c_in_S" => s.is_down_closed(&[s.idx(&Point::atom("c"))?]).to_string(),
        "space.fibered.D2_pt_D2" => {
            let m = CMap::new(d2(), pt_space(), vec![0, 0])?;
            let fp = fibered_product(&m, &m)?;
            let sp = fp.space.space();
            let discrete = (0..sp.len()).all(|p| sp.down(p) == [p]);
            format!("points={} discrete={discrete}", sp.len())
        }
        "space.fibered.o_S_S" => {
            let o = Arc::new(FinSpace::discrete(vec![Point::atom("o")])?);
            let incl = CMap::new(o, s.clone(), vec![s.idx(&Point::atom("o"))?])?;
            let fp = fibered_product(&incl, &CMap::identity(&s))?;
            format!("points={}", fp.space.len())
        }
        "space.germ.swap_at_a" => {
            let sp = d2();
            let g = germ_of(&sp, &LocalMap { domain: sp.whole(), image: vec![1, 0] }, 0)?;
            format!("{}->{}", sp.point(g.base), sp.point(g.target))
        }
        "space.germ.agree_at_a" => {
            let sp = d2();
            let g1 = germ_of(&sp, &LocalMap { domain: sp.whole(), image: vec![0, 1] }, 0)?;
            let g2 = germ_of(&sp, &LocalMap { domain: sp.whole(), image: vec![0, 0] }, 0)?;
            format!("equal={}", g1 == g2)
        }
        "groupoid.etale.ptZ2" => b.is_etale().to_string(),
        "groupoid.etale.indiscrete_Z2" => indiscrete_z2().is_etale().to_string(),
        "groupoid.cech.unitS" => {
            let c = cech_groupoid(&unit(&s), &s_cover())?.groupoid;
            let nonid = (0..c.n_arr()).filter(|&a| !c.is_unit(a)).count();
            format!("{} nonidentity={nonid}", counts(&c))
        }
        "groupoid.cech.ptZ2" => counts(&cech_groupoid(&b, &pt_cover())?.groupoid),
        "groupoid.morita.cech_projection" => {
            is_morita_equivalence(&cech_groupoid(&b, &pt_cover())?.projection).is_equivalence().to_string()
        }
        "groupoid.morita.ptZ2_to_pt" => is_morita_equivalence(&to_point(&b, &pt)?).is_equivalence().to_string(),
        "groupoid.weak_pullback.pt_ptZ2_pt" => {
            let incl = GroupoidHom::new(pt.clone(), b.clone(), vec![0], vec![b.unit(0)])?;
            counts(&weak_pullback(&incl, &incl)?.groupoid)
        }
        "groupoid.weak_pullback.fiber_E" => {
            let c = stalk_vs_ineffective_isotropy(&pt, &f.e, 0)?;
            let tp = theta_prime(&action_groupoid(&f.e)?)?;
            let cg = &tp.cech.groupoid;
            let pick = GroupoidHom::new(pt.clone(), cg.clone(), vec![0], vec![cg.unit(0)])?;
            let wp = weak_pullback(&pick, &tp.map)?;
            format!("connected={} isotropy={}", wp.groupoid.components().len() == 1, c.fiber.order())
        }
        "groupoid.space.pair_D2" => {
            let pair = effective_part(&swap)?.groupoid;
            let q = is_equivalent_to_space(&pair);
            format!("{} quotient={}", q.injective, q.quotient.map_or(0, |s| s.len()))
        }
        "groupoid.space.ptZ2" => is_equivalent_to_space(&b).injective.to_string(),
        "site.m.ptZ2_pt" => {
            let m = representable_sheaf(&b, &b.obj().whole())?;
            let g = b.arr().idx(&Point::atom("g"))?;
            let swaps = (0..m.sheaf.len()).all(|e| m.sheaf.act(g, e) != e);
            format!("total={} g_swaps={swaps}", m.sheaf.len())
        }
        "site.m.swap_a" => {
            let m = representable_sheaf(&swap, &open_named(swap.obj(), &["a"])?)?;
            let moments: Vec<usize> = (0..m.sheaf.len()).map(|e| m.sheaf.moment(e)).collect();
            format!("total={} moments={}", m.sheaf.len(), names(swap.obj(), &moments))
        }
        "site.hom.ptZ2_pt_pt" => site_hom(&b, &b.obj().whole(), &b.obj().whole()).len().to_string(),
        "site.hom.swap_a_b" => {
            let (ua, ub) = (open_named(swap.obj(), &["a"])?, open_named(swap.obj(), &["b"])?);
            site_hom(&swap, &ua, &ub).len().to_string()
        }
        "site.m_on_arrows.ptZ2_g" => {
            let whole = b.obj().whole();
            let m = representable_sheaf(&b, &whole)?;
            let g = b.arr().idx(&Point::atom("g"))?;
            let sigma = site_hom(&b, &whole, &whole).into_iter().find(|a| a.section == [g]).expect("σ = g");
            let map = m_on_arrows(&b, &sigma, &m, &m)?;
            format!("swap={}", (0..m.sheaf.len()).all(|e| map.apply(e) != e))
        }
        "site.maps.swap_a_b" => {
            let ma = representable_sheaf(&swap, &open_named(swap.obj(), &["a"])?)?;
            let mb = representable_sheaf(&swap, &open_named(swap.obj(), &["b"])?)?;
            equivariant_maps(ma.sheaf.space(), mb.sheaf.space()).len().to_string()
        }
        "sheaf.pullback.iota_B_E0" => {
            let ef = iota_b.cod().clone();
            let e0 = EquivariantSheaf::new(HSpace::new(ef, d2(), vec![0, 0], |_, e| Some(e))?)?;
            let pulled = pullback_sheaf(&iota_b, &e0)?.sheaf;
            let g = b.arr().idx(&Point::atom("g"))?;
            let free = (0..pulled.len()).all(|e| pulled.act(g, e) != e);
            format!("points={} free={free}", pulled.len())
        }
        "stalk.E" => counts(&stalk(&f.e, 0)?.groupoid),
        "stalk.D2_over_pt" => counts(&stalk(&GroupoidObject::discrete(&two_point_sheaf()?), 0)?.groupoid),
        "action.pt_Z2" => counts(action_groupoid(&f.e)?.groupoid()),
        "action.ptZ2_m_pt" => {
            let m = representable_sheaf(&b, &b.obj().whole())?;
            let a = action_groupoid(&GroupoidObject::discrete(&m.sheaf))?;
            let g = a.groupoid();
            let pair = (0..g.n_obj()).all(|x| (0..g.n_obj()).all(|y| g.hom(x, y).len() == 1));
            format!("{} pair={pair}", counts(g))
        }
        "action.P_iota_B" => counts(p_functor(&OverGroupoid::new(iota_b.clone()))?.object.inner()),
        "action.epsilon_iota_B" => counts(epsilon_witness(&OverGroupoid::new(iota_b.clone()))?.realization.groupoid()),
        "action.epsilon_theta_m_pt" => {
            let m = representable_sheaf(&b, &b.obj().whole())?;
            let over = action_groupoid(&GroupoidObject::discrete(&m.sheaf))?.over;
            format!("valid={}", epsilon_witness(&over).is_ok())
        }
        "action.realize.ptZ2_pt" => {
            let w = realize_representable(&b, &b.obj().whole())?;
            format!("arrows={} morita={}", w.realization.groupoid().n_arr(), w.morita.is_equivalence())
        }
        "action.realize.swap_a" => {
            let w = realize_representable(&swap, &open_named(swap.obj(), &["a"])?)?;
            format!("points={} morita={}", w.m.sheaf.len(), w.morita.is_equivalence())
        }
        "action.inverse_image.ptZ2_id_pt" => {
            counts(&inverse_image_compat(&GroupoidHom::identity(&b), &b.obj().whole())?.pullback.groupoid)
        }
        "action.inverse_image.D2_pt" => {
            let d2u = unit(&d2());
            counts(&inverse_image_compat(&to_point(&d2u, &pt)?, &pt.obj().whole())?.pullback.groupoid)
        }
        "action.sections.iota_B_pt" => {
            let sb = sections_bijection(&OverGroupoid::new(iota_b.clone()), &pt.obj().whole())?;
            format!("objects={} arrows={}", sb.object_maps.len(), sb.arrow_maps.len())
        }
        "action.sections.swap_id_a" => {
            let sb = sections_bijection(&OverGroupoid::identity(&swap), &open_named(swap.obj(), &["a"])?)?;
            format!("objects={} arrows={}", sb.object_maps.len(), sb.arrow_maps.len())
        }
        "effective.haefliger.D2" => format!("arrows={}", haefliger(&d2())?.groupoid.n_arr()),
        "effective.haefliger.S" => format!("arrows={}", haefliger(&s)?.groupoid.n_arr()),
        "effective.iota_tilde.ptZ2" => {
            let it = iota_tilde(&b)?;
            let ha = &it.haefliger.groupoid;
            format!("identity={}", it.map.on_arr().iter().all(|&a| ha.is_unit(a)))
        }
        "effective.iota_tilde.swap" => {
            let it = iota_tilde(&swap)?;
            let mut img = it.map.on_arr().to_vec();
            img.sort_unstable();
            img.dedup();
            format!("injective={}", img.len() == swap.n_arr())
        }
        "effective.part.ptZ2" => counts(&effective_part(&b)?.groupoid),
        "effective.is_effective.swap" => is_effective(&swap)?.effective.to_string(),
        "effective.is_effective.ptZ2" => {
            let e = is_effective(&b)?;
            let w = e.witness.map(|(x, y)| names(b.arr(), &[x, y])).unwrap_or_default();
            format!("{} witness={w}", e.effective)
        }
        "effective.isotropy.ptZ2" => ineffective_isotropy(&b, 0)?.order().to_string(),
        "effective.isotropy.swap_a" => {
            ineffective_isotropy(&swap, swap.obj().idx(&Point::atom("a"))?)?.order().to_string()
        }
        "effective.ef_on_hom.swap_to_ptZ2" => {
            let g = b.arr().idx(&Point::atom("g"))?;
            let f1 = (0..swap.n_arr()).map(|a| if swap.is_unit(a) { b.unit(0) } else { g }).collect();
            let q = GroupoidHom::new(swap.clone(), b.clone(), vec![0; swap.n_obj()], f1)?;
            let (src, dst) = (effective_part(&swap)?, effective_part(&b)?);
            let ef = ef_on_hom(&q, &src, &dst)?;
            format!("identity={}", ef.on_arr().iter().all(|&a| dst.groupoid.is_unit(a)))
        }
        "effective.same_germ.E" => {
            let a = action_groupoid(&f.e)?;
            let g = a.groupoid();
            let (x, y) = (g.hom(0, 0)[0], g.hom(0, 0)[1]);
            let sg = same_germ_in_action_groupoid(&pt, &f.e, x, y)?;
            format!("germ={} theta_prime={}", sg.same_germ, sg.same_theta_prime)
        }
        "gerbe.bouquet.E" => is_bouquet(&f.e).is_bouquet().to_string(),
        "gerbe.bouquet.o_over_S" => {
            let us = unit(&s);
            let o = s.idx(&Point::atom("o"))?;
            let single = Arc::new(FinSpace::discrete(vec![Point::atom("o")])?);
            let sheaf = EquivariantSheaf::new(HSpace::new(us.clone(), single, vec![o], |_, e| Some(e))?)?;
            is_bouquet(&GroupoidObject::discrete(&sheaf)).is_bouquet().to_string()
        }
        "gerbe.stalkwise.E" => is_gerbe_stalkwise(&f.e)?.to_string(),
        "gerbe.stalkwise.two_points" => is_gerbe_stalkwise(&GroupoidObject::discrete(&two_point_sheaf()?))?.to_string(),
        "gerbe.full.theta_E" => action_groupoid(&f.e)?.theta().is_full().to_string(),
        "gerbe.full.D2_to_pt" => to_point(&unit(&d2()), &pt)?.is_full().to_string(),
        "gerbe.ef_realization.pt_E" => {
            let r = ef_of_realization(&pt, &f.e)?;
            format!("arrows={} iso={}", r.effective.groupoid.n_arr(), r.is_isomorphism())
        }
        "gerbe.ef_realization.S_Z2" => {
            let us = unit(&s);
            let r = ef_of_realization(&us, &z2_bundle(&us)?)?;
            format!("arrows={} iso={}", r.effective.groupoid.n_arr(), r.is_isomorphism())
        }
        "gerbe.from_ineffective.ptZ2" => counts(gerbe_from_ineffective(&b)?.object().inner()),
        "gerbe.from_ineffective.ptZ2_swap" => {
            let g = Arc::new(FinGroupoid::disjoint_union(&[("l", &b), ("r", &swap)])?);
            let gf = gerbe_from_ineffective(&g)?;
            format!("{} bouquet={}", counts(gf.object().inner()), gf.bouquet.is_bouquet())
        }
        "gerbe.decomposition.theta_E" => decomposition(action_groupoid(&f.e)?.theta())?,
        "gerbe.decomposition.iota_B" => decomposition(&iota_b)?,
        "gerbe.decomposition.pt_in_ptZ2" => {
            decomposition(&GroupoidHom::new(pt.clone(), b.clone(), vec![0], vec![b.unit(0)])?)?
        }
        "gerbe.isotropy.E" => {
            let c = stalk_vs_ineffective_isotropy(&pt, &f.e, 0)?;
            format!("{},{},{}", c.bouquet.order(), c.ineffective.order(), c.fiber.order())
        }
        "gets.pullback.o_in_S" => {
            let us = unit(&s);
            let tau = action_groupoid(&z2_bundle(&us)?)?.over;
            let o = Arc::new(FinSpace::discrete(vec![Point::atom("o")])?);
            let uo = unit(&o);
            let oi = s.idx(&Point::atom("o"))?;
            let incl = GroupoidHom::new(uo, us.clone(), vec![oi], vec![us.unit(oi)])?;
            counts(&pullback_gerbe(&incl, &tau)?.pullback.groupoid)
        }
        "gets.theta.ptZ2" => counts(&theta(&b)?.base),
        "gets.xi_theta.ptZ2" => format!("identity={}", *xi(&theta(&b)?) == *b),
        "gets.theta_xi.pt_E" => {
            let obj = GerbedObject::new(action_groupoid(&f.e)?.over)?;
            format!("morita={}", theta_xi_comparison(&obj)?.base.is_equivalence())
        }
        "gets.automorphisms.ptZ2" => {
            let autos = natural_automorphisms(&b, 8);
            let cells: Vec<NatTrans> =
                autos.iter().map(|a| theta_on_2cell(a).and_then(|c| xi_on_2cell(&c))).collect::<Result<_>>()?;
            let law = cells.len() == 2
                && cells.iter().filter(|c| !c.is_identity()).all(|c| c.vertical(c).map_or(false, |p| p.is_identity()));
            format!("count={} law={}", cells.len(), if law { "Z2" } else { "other" })
        }
        "gets.twist.ptZ2" => {
            let autos = natural_automorphisms(&b, 8);
            let twist = autos.iter().find(|a| !a.is_identity()).expect("g");
            let back = xi_on_2cell(&theta_on_2cell(twist)?)?;
            format!("nontrivial={}", back == *twist && !back.is_identity())
        }
        "gets.associativity.chain" => {
            let cover = pt_cover();
            let cech = cech_groupoid(&b, &cover)?;
            let ef_b = effective_part(&b)?;
            let (p, i, id) = (
                theta_on_map(&cech.projection)?,
                theta_on_map(&ef_b.iota)?,
                theta_on_map(&GroupoidHom::identity(&ef_b.groupoid))?,
            );
            let left = compose_gerbed(&compose_gerbed(&id, &i)?, &p)?;
            let right = compose_gerbed(&id, &compose_gerbed(&i, &p)?)?;
            let strict = xi_on_map(&left)? == xi_on_map(&right)?;
            (left.f == right.f && left.m == right.m && strict).to_string()
        }
        "gets.two_cells.ptZ2_over_pt" => nat_trans_count(&GroupoidHom::identity(&b)).to_string(),
        "cli.check_effective.ptZ2" => {
            let e = is_effective(&b)?;
            let witness: Vec<String> =
                e.witness.iter().flat_map(|&(x, y)| [b.arr().point(x).to_string(), b.arr().point(y).to_string()]).collect();
            serde_json::json!({ "effective": e.effective, "witness": witness }).to_string()
        }
        "cli.effective_part.ptZ2" => {
            let ef = effective_part(&b)?.groupoid;
            format!("unit={}", (0..ef.n_arr()).all(|a| ef.is_unit(a)))
        }
        other => format!("unknown key {other}"),
    })
}

fn decomposition(rho: &GroupoidHom) -> Result<String> {
    let d = gerbe_decomposition_check(rho)?;
    Ok(format!("{},{},{}", d.gerbe_over_target, d.gerbe_over_effective, d.full))
}

/// The library's value for every frozen key, in table order.
pub fn values() -> Vec<(&'static str, String)> {
    FROZEN.iter().map(|&(k, _)| (k, value(k).unwrap_or_else(|e| format!("error: {e}")))).collect()
}

/// Keys whose computed value differs from the frozen one.
pub fn mismatches() -> Vec<String> {
    values()
        .into_iter()
        .zip(FROZEN)
        .filter(|((_, got), (_, want))| got != want)
        .map(|((k, got), (_, want))| format!("{k}: computed {got:?}, frozen {want:?}"))
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn computed_values_match_the_frozen_table() {
        let bad = super::mismatches();
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}
