//! The registry of checks run by `smkdv verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atom::{Field, Flow};
use crate::backlund::*;
use crate::charges::*;
use crate::defects::*;
use crate::expr::Expr;
use crate::formula::ex;
use crate::hierarchy::{build_at_printed, flow_spec, published_eom, solve_flow, susy_residuals, zero_curvature_residual};
use crate::hierarchy::{build_at, build_ax};
use crate::numeric::{momentum_drift, observed_order, run_oracle_with, soliton_bt_residual, Grid, Stencil, Systems};
use crate::rewrite::RewriteSystem;
use crate::superalgebra::SuperMatrix;
use crate::superspace::SuperExpr;

use super::{Check, CheckResult, Context, Options, Outcome, Suite};

fn entries(label: &str, m: &SuperMatrix) -> Vec<(String, Expr)> {
    m.nonzero_entries().into_iter().map(|(r, c, e)| (format!("{label}({},{})", r + 1, c + 1), e.clone())).collect()
}

fn labelled<L: std::fmt::Display>(v: Vec<(L, Expr)>) -> Vec<(String, Expr)> {
    v.into_iter().map(|(l, e)| (l.to_string(), e)).collect()
}

/// `derived - published` for each table entry; a missing entry counts as the whole published value.
fn against_table(label: &str, table: &[(i32, &str)], get: impl Fn(i32) -> Option<Expr>) -> Vec<(String, Expr)> {
    table
        .iter()
        .map(|(n, src)| {
            let want = ex(src);
            let diff = match get(*n) {
                Some(d) => &d - &want,
                None => want,
            };
            (format!("{label} order {n}"), diff)
        })
        .collect()
}

fn same_rules(got: &RewriteSystem, want: &RewriteSystem) -> Vec<(String, Expr)> {
    let mut out: Vec<(String, Expr)> = want
        .rules()
        .map(|(a, e)| {
            let d = got.replacement(a).map_or_else(|| e.clone(), |g| g - e);
            (a.to_string(), d)
        })
        .collect();
    for (a, e) in got.rules().filter(|(a, _)| want.replacement(*a).is_none()) {
        out.push((format!("unexpected rule {a}"), e.clone()));
    }
    out
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn add(
        &mut self,
        suite: Suite,
        id: impl Into<String>,
        anchor: impl Into<String>,
        criterion: Option<u8>,
        tags: (Option<Flow>, Option<Charge>),
        run: impl Fn(&Context) -> CheckResult + Send + Sync + 'static,
    ) {
        let id = format!("{}/{}", suite.label(), id.into());
        self.checks.push(Check {
            id,
            anchor: anchor.into(),
            suite,
            flow: tags.0,
            charge: tags.1,
            criterion,
            run: Box::new(run),
        });
    }
}

const NONE: (Option<Flow>, Option<Charge>) = (None, None);

fn flow(f: Flow) -> (Option<Flow>, Option<Charge>) {
    (Some(f), None)
}

fn zero_curvature(b: &mut Builder) {
    for (f, anchor) in [
        (Flow::T3, "t3 Lax pair with the t3 equations of motion"),
        (Flow::T5, "t5 Lax pair with the t5 equations of motion"),
        (Flow::Tm1, "t-1 Lax pair with the sinh-Gordon type equations"),
    ] {
        b.add(Suite::ZeroCurvature, f.label(), anchor, Some(1), flow(f), move |_| {
            let spec = flow_spec(f)?;
            Ok(Outcome::zero(entries("", &zero_curvature_residual(&build_ax(), &spec.lax, f, &spec.eom)?)))
        });
    }
    b.add(Suite::ZeroCurvature, "printed-lax-entries", "printed t5 and t-1 Lax entries are caught", None, NONE, |_| {
        let mut items = Vec::new();
        for f in [Flow::Tm1, Flow::T5] {
            let spec = flow_spec(f)?;
            items.extend(entries(f.label(), &zero_curvature_residual(&build_ax(), &build_at_printed(f), f, &spec.eom)?));
        }
        Ok(Outcome::nonzero(items))
    });
    for n in [1u32, 3, 5] {
        let f = Flow::from_label(&format!("t{n}")).expect("odd flow");
        b.add(Suite::ZeroCurvature, format!("solve-{f}"), format!("grade-by-grade solution of the {f} flow"), Some(2), flow(f), move |_| {
            let sol = solve_flow(n)?;
            let mut items = entries("A_t", &(&sol.lax - &build_at(f)));
            if f != Flow::T1 {
                items.extend(same_rules(&sol.eom, &published_eom(f)?));
            }
            Ok(Outcome::zero(items))
        });
    }
    for f in [Flow::T3, Flow::T5] {
        b.add(Suite::ZeroCurvature, format!("susy-{f}"), format!("supersymmetry of the {f} equations"), None, flow(f), move |_| {
            Ok(Outcome::zero(labelled(susy_residuals(&published_eom(f)?, f)?)))
        });
    }
}

pub(super) fn t5_coefficients(bt: &BtSystem) -> (Vec<(usize, Expr)>, Vec<(usize, Expr)>) {
    let phim = bt.phim_rule().cloned().unwrap_or_default().scale_int(16);
    let f1 = bt.f1_rule().cloned().unwrap_or_default().scale_int(16);
    let pick = |e: &Expr, units: &[(usize, &str)]| -> Vec<(usize, Expr)> {
        let mut out: Vec<(usize, Expr)> = Vec::new();
        for (k, u) in units {
            if out.iter().all(|(j, _)| j != k) {
                out.push((*k, coefficient(e, &ex(u)).unwrap_or_default()));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out
    };
    (pick(&phim, &T5_C_UNITS), pick(&f1, &T5_G_UNITS))
}

fn backlund(b: &mut Builder) {
    b.add(Suite::Backlund, "derive-t1", "spatial Backlund transformation from the defect matrix", Some(3), flow(Flow::T1), |ctx| {
        Ok(Outcome::zero(same_rules(&ctx.bt(Flow::T1)?.spatial, &published_spatial()?)))
    });
    b.add(Suite::Backlund, "derive-t3", "t3 Backlund transformation", Some(3), flow(Flow::T3), |ctx| {
        let t3 = ctx.bt(Flow::T3)?;
        let rs = t3.full()?;
        let psbm = rs.rewrite(&Expr::time_jet(Field::PsbM, 0, Flow::T3))?.scale_int(4);
        let b1 = rs.rewrite(&ex(B1).d_dt(Flow::T3)?)?.scale_int(4);
        Ok(Outcome::zero(vec![
            ("phim".into(), &t3.phim_rule().cloned().unwrap_or_default().scale_int(4) - &ex(T3_PHIM)),
            ("f1".into(), &t3.f1_rule().cloned().unwrap_or_default().scale_int(4) - &ex(T3_F1)),
            ("psbm".into(), rs.rewrite(&(&psbm - &ex(T3_PSBM)))?),
            ("b1".into(), rs.rewrite(&(&b1 - &ex(T3_B1)))?),
        ]))
    });
    b.add(Suite::Backlund, "derive-t5", "t5 Backlund transformation and its c and g coefficients", Some(3), flow(Flow::T5), |ctx| {
        let t5 = ctx.bt(Flow::T5)?;
        let (cs, gs) = t5_coefficients(t5);
        let mut items: Vec<(String, Expr)> = cs.into_iter().map(|(k, c)| (format!("c{k}"), &c - &ex(T5_C[k]))).collect();
        items.extend(gs.into_iter().map(|(k, g)| (format!("g{k}"), &g - &ex(T5_G[k]))));
        items.push(("phim assembled".into(), &t5.phim_rule().cloned().unwrap_or_default().scale_int(16) - &assemble(&T5_C, &T5_C_UNITS)));
        items.push(("f1 assembled".into(), &t5.f1_rule().cloned().unwrap_or_default().scale_int(16) - &assemble(&T5_G, &T5_G_UNITS)));
        Ok(Outcome::zero(items))
    });
    for f in [Flow::T1, Flow::T3, Flow::T5] {
        b.add(Suite::Backlund, format!("gauge-{f}"), format!("defect gauge condition along {f}"), Some(3), flow(f), move |ctx| {
            Ok(Outcome::zero(entries("", &verify_gauge(&build_k(), ctx.bt(f)?)?)))
        });
        b.add(Suite::Backlund, format!("susy-{f}"), format!("supersymmetry of the {f} transformation"), Some(4), flow(f), move |ctx| {
            Ok(Outcome::zero(labelled(susy_check(ctx.bt(f)?)?)))
        });
    }
    for f in [Flow::T3, Flow::T5] {
        b.add(Suite::Backlund, format!("cross-{f}"), format!("x and {f} transformations commute"), Some(4), flow(f), move |ctx| {
            Ok(Outcome::zero(cross_consistency(ctx.bt(f)?)?.into_iter().map(|(fd, e)| (fd.label().to_string(), e)).collect()))
        });
    }
    b.add(Suite::Backlund, "susy-without-f1-variation", "transformation is not invariant with f1 held fixed", Some(4), flow(Flow::T1), |ctx| {
        Ok(Outcome::nonzero(labelled(susy_check_with(ctx.bt(Flow::T1)?, &Expr::zero())?)))
    });
    b.add(Suite::Backlund, "bosonic-recursion", "recursion operator maps the t3 to the t5 bosonic transformation", Some(5), flow(Flow::T5), |ctx| {
        let (cs, _) = t5_coefficients(ctx.bt(Flow::T5)?);
        let c = |k: usize| cs.iter().find(|(j, _)| *j == k).map(|(_, c)| c.clone()).unwrap_or_default();
        let split = &(&(&c(5) * &ex("1/w^2")) + &(&c(12) * &ex("1/w^6"))) + &(&c(15) * &ex("1/w^10"));
        let items = vec![
            ("recursion minus 16 d_t5 phim".to_string(), bosonic_recursion_check(ctx.bt(Flow::T1)?)?),
            ("c5/w^2 + c12/w^6 + c15/w^10".to_string(), &bosonic_t5_target() - &split),
        ];
        Ok(Outcome::zero(items))
    });
}

fn random_expr(rng: &mut ChaCha8Rng) -> Expr {
    const EVEN: [Field; 3] = [Field::Phi, Field::PhiP, Field::B1];
    const ODD: [Field; 3] = [Field::Psb, Field::PsbP, Field::F1];
    let units = [ex("1"), ex("i"), ex("si")];
    let mut out = Expr::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mut t = &Expr::frac(rng.gen_range(-9..=9), rng.gen_range(1..=5)) * &units[rng.gen_range(0..3)];
        for _ in 0..rng.gen_range(0..3) {
            let f = match rng.gen_range(0..3) {
                0 => Expr::jet(EVEN[rng.gen_range(0..3)], rng.gen_range(0..3)),
                1 => Expr::exp_half(EVEN[rng.gen_range(0..2)], rng.gen_range(-2..=2)),
                _ => Expr::omega(rng.gen_range(-2..=2)),
            };
            t = &t * &f;
        }
        for _ in 0..rng.gen_range(0..4) {
            t = &t * &Expr::jet(ODD[rng.gen_range(0..3)], rng.gen_range(0..3));
        }
        out = &out + &t;
    }
    out
}

/// `count` seeded random superfields.
pub fn random_superfields(seed: u64, count: usize) -> Vec<SuperExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| SuperExpr::new(random_expr(&mut rng), random_expr(&mut rng))).collect()
}

fn superspace(b: &mut Builder) {
    for f in [Flow::T1, Flow::T3, Flow::T5] {
        b.add(Suite::Superspace, format!("bt-{f}"), format!("superfield form of the {f} transformation"), Some(6), flow(f), move |ctx| {
            Ok(Outcome::zero(superspace_bt_check(ctx.bt(f)?)?))
        });
    }
    for f in [Flow::T3, Flow::T5] {
        b.add(Suite::Superspace, format!("flow-{f}"), format!("superfield {f} flow"), Some(6), flow(f), move |_| {
            Ok(Outcome::zero(super_flow_check(f)?))
        });
    }
    b.add(Suite::Superspace, "gamma-extension", "one-parameter superfield extension fixed at (1/2, 1, 3/2, 1)", Some(6), flow(Flow::T5), |_| {
        let g = gamma_fixed();
        let r = gamma_extension_check(&g)?;
        let (a, c) = gamma_components_residual(&g)?;
        Ok(Outcome::zero(vec![("body".into(), r.body), ("soul".into(), r.soul), ("components".into(), a), ("component flow".into(), c)]))
    });
    b.add(Suite::Superspace, "d-squared", "D^2 = d_x on random superfields", Some(6), NONE, |ctx| {
        let items = random_superfields(ctx.options.seed, ctx.options.random_superfields)
            .into_iter()
            .enumerate()
            .flat_map(|(k, e)| {
                let r = &e.d().d() - &e.d_dx();
                [(format!("sample {k} body"), r.body), (format!("sample {k} soul"), r.soul)]
            })
            .collect();
        Ok(Outcome::zero(items))
    });
}

fn density_items(charge: Charge, src: &str) -> std::result::Result<(String, Expr), ChargeError> {
    let d = charge_density(charge)?;
    Ok((charge.to_string(), &d.density - &ex(src)))
}

fn flux_items(charge: Charge, f: Flow, published: &str) -> std::result::Result<Vec<(String, Expr)>, ChargeError> {
    let d = charge_density(charge)?;
    let flux = conservation_check(&d, f)?;
    let want = ex(published);
    let rate = published_eom(f)?.rewrite(&d.density.d_dt(f)?)?;
    Ok(vec![
        ("d_t density - d_x published flux".into(), &rate - &want.d_dx()),
        ("d_x (derived - published flux)".into(), (&flux - &want).d_dx()),
    ])
}

fn charges(b: &mut Builder, opts: &Options) {
    b.add(Suite::Charges, "auxiliary-coefficients", "Riccati coefficients of the auxiliary functions", Some(7), NONE, |_| {
        let (g21, g31) = riccati_pair(1, 4)?;
        let (g12, g32) = riccati_pair(2, 5)?;
        let mut items = Vec::new();
        for (s, table) in [(g21, &GAMMA21[..]), (g31, &GAMMA31[..]), (g12, &GAMMA12[..]), (g32, &GAMMA32[..])] {
            items.extend(against_table(s.which.label(), table, |n| s.coeff(n).cloned()));
        }
        Ok(Outcome::zero(items))
    });
    b.add(Suite::Charges, "densities", "generated, momentum and energy densities", Some(7), NONE, |_| {
        let mut items = vec![density_items(Charge::Momentum, MOMENTUM_DENSITY)?, density_items(Charge::Energy, ENERGY_DENSITY)?];
        for (set, order, src) in GENERATED_DENSITIES {
            items.push(density_items(Charge::Generated { set, order }, src)?);
        }
        Ok(Outcome::zero(items))
    });
    for (c, f, flux) in [
        (Charge::Momentum, Flow::T3, MOMENTUM_FLUX_T3),
        (Charge::Momentum, Flow::T5, MOMENTUM_FLUX_T5),
        (Charge::Energy, Flow::T3, ENERGY_FLUX_T3),
        (Charge::Energy, Flow::T5, ENERGY_FLUX_T5),
    ] {
        let name = if c == Charge::Momentum { "momentum" } else { "energy" };
        b.add(Suite::Charges, format!("flux-{c}-{f}"), format!("{name} flux along {f}"), Some(7), (Some(f), Some(c)), move |_| {
            Ok(Outcome::zero(flux_items(c, f, flux)?))
        });
    }
    b.add(Suite::Charges, "printed-energy-flux-t3", "printed energy flux along t3 is caught", None, (Some(Flow::T3), Some(Charge::Energy)), |_| {
        Ok(Outcome::nonzero(flux_items(Charge::Energy, Flow::T3, ENERGY_FLUX_T3_PRINTED)?))
    });
    if let Some(order) = opts.order {
        for set in [1u8, 2] {
            let c = Charge::Generated { set, order };
            for f in [Flow::T3, Flow::T5] {
                b.add(Suite::Charges, format!("conserved-{c}-{f}"), format!("generated charge {c} along {f}"), None, flow(f), move |_| {
                    let d = charge_density(c)?;
                    let flux = conservation_check(&d, f)?;
                    let rate = published_eom(f)?.rewrite(&d.density.d_dt(f)?)?;
                    Ok(Outcome::zero(vec![("d_t density - d_x flux".into(), &rate - &flux.d_dx())]))
                });
            }
        }
    }
}

fn defects(b: &mut Builder) {
    for (set, table) in [(1u8, &D1), (2, &D2)] {
        b.add(Suite::Defects, format!("expansion-set{set}"), format!("defect generating function, set {set}"), Some(8), NONE, move |_| {
            let g = defect_expansion(set, 3)?;
            Ok(Outcome::zero(against_table(&format!("D{set}"), table, |n| g.coeff(n).cloned())))
        });
    }
    for (c, src) in [(Charge::Momentum, MOMENTUM_DEFECT), (Charge::Energy, ENERGY_DEFECT)] {
        b.add(Suite::Defects, format!("term-{c}"), format!("defect contribution to {c}"), Some(8), (None, Some(c)), move |ctx| {
            let d = defect_term(c, &ctx.bt(Flow::T1)?.spatial)?;
            Ok(Outcome::zero(vec![(c.to_string(), &d - &ex(src))]))
        });
    }
    for (c, f, criterion) in [
        (Charge::Momentum, Flow::T3, Some(8)),
        (Charge::Energy, Flow::T3, Some(8)),
        (Charge::Momentum, Flow::T5, Some(8)),
        (Charge::Energy, Flow::T5, None),
    ] {
        b.add(Suite::Defects, format!("modified-{c}-{f}"), format!("{c} plus its defect term is conserved along {f}"), criterion, (Some(f), Some(c)), move |ctx| {
            let bt = ctx.bt(f)?;
            let d = defect_term(c, &bt.spatial)?;
            Ok(Outcome::zero(vec![("rate".into(), modified_charge_residual_with(c, bt, &d)?)]))
        });
    }
    b.add(Suite::Defects, "bare-charges", "bulk charges alone are not conserved", None, flow(Flow::T3), |ctx| {
        let bt = ctx.bt(Flow::T3)?;
        let mut items = Vec::new();
        for c in [Charge::Momentum, Charge::Energy] {
            items.push((c.to_string(), boundary_rate(c, bt)?));
        }
        let all = Outcome::zero(items.clone());
        let each_nonzero = items.iter().all(|(_, e)| !e.is_zero());
        Ok(Outcome { pass: each_nonzero, ..all })
    });
}

fn numeric(b: &mut Builder) {
    b.add(Suite::Numeric, "oracle", "certified identities and their mutations in a six-generator exterior algebra", Some(9), NONE, |ctx| {
        let sys = Systems { t1: ctx.bt(Flow::T1)?.clone(), t3: ctx.bt(Flow::T3)?.clone(), t5: ctx.bt(Flow::T5)?.clone() };
        let seeds = ctx.options.oracle_seeds;
        let r = run_oracle_with(&sys, ctx.options.seed, seeds)?;
        let min_seeds = (seeds * 95).div_ceil(100);
        let worst = r.certified.iter().map(|c| c.worst).fold(0.0, f64::max);
        let fewest = r.mutated.iter().map(|c| c.above_threshold).min().unwrap_or(0);
        let mut sample = vec![
            format!("{} certified identities, worst residual {worst:.1e} (limit {:.0e})", r.certified.len(), r.zero_tolerance),
            format!("{} mutations, fewest seeds above {:.0e}: {fewest}/{seeds}", r.mutated.len(), r.mutation_threshold),
        ];
        sample.extend(r.certified.iter().filter(|c| c.worst >= r.zero_tolerance).map(|c| format!("not zero: {}", c.name)));
        sample.extend(r.mutated.iter().filter(|c| c.above_threshold < min_seeds).map(|c| format!("missed: {}", c.name)));
        let pass = r.certified_pass() && r.mutated.len() == 20 && r.mutations_pass(min_seeds);
        ctx.store_oracle(r);
        Ok(Outcome::numeric(pass, sample))
    });
    b.add(Suite::Numeric, "soliton", "half-line soliton satisfies the bosonic x and t3 transformations", Some(9), flow(Flow::T3), |_| {
        let grid = Grid { start: -20.0, end: 0.0, points: 2048 };
        let r = soliton_bt_residual(1.0, grid, &[-0.5, -0.25, 0.0])?;
        Ok(Outcome::numeric(
            r.spatial < 1e-6 && r.temporal < 1e-6,
            vec![format!("w = 1 on {} points: spatial {:.1e}, t3 {:.1e} (limit 1e-6)", grid.points, r.spatial, r.temporal)],
        ))
    });
    b.add(Suite::Numeric, "momentum-drift", "discrete momentum under the bosonic t3 flow", Some(9), flow(Flow::T3), |_| {
        let d = momentum_drift(|x| 1.0 / x.cosh(), 40.0, 256, 1e-3, 1000);
        Ok(Outcome::numeric(d.max_relative < 1e-6, vec![format!("relative drift {:.1e} over t in [0, 1] (limit 1e-6)", d.max_relative)]))
    });
    b.add(Suite::Numeric, "stencils", "finite-difference stencils converge at their nominal order", None, NONE, |_| {
        let mut sample = Vec::new();
        let mut pass = true;
        for (order, half) in [(1usize, 2usize), (1, 3), (2, 2), (3, 3)] {
            let exact = [0.3f64.cos(), -0.3f64.sin(), -0.3f64.cos()][order - 1];
            let p = observed_order(order, half, f64::sin, exact, 0.3, 0.1);
            let nominal = Stencil::central(order, half, 0.1).accuracy() as f64;
            pass &= (p - nominal).abs() < 0.5;
            sample.push(format!("derivative {order}, {} points: order {p:.2} (nominal {nominal})", 2 * half + 1));
        }
        Ok(Outcome::numeric(pass, sample))
    });
}

/// Every check, in registration order.
pub fn registry(opts: &Options) -> Vec<Check> {
    let mut b = Builder { checks: Vec::new() };
    zero_curvature(&mut b);
    backlund(&mut b);
    superspace(&mut b);
    charges(&mut b, opts);
    defects(&mut b);
    numeric(&mut b);
    b.checks
}
