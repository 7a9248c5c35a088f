//! End-to-end runs of the property suites, printed as tables.
//!
//! Each demo draws its instances from a seeded generator, so output is
//! byte-identical across runs with the same seed.

use std::fmt::Write;

use rand::Rng;

use novsheaf_core::barcode::{cone, star_eq, EqBarcode};
use novsheaf_core::curved::{
    mc_residual, mc_solve, tc_residual, tc_totalize, EndomorphismFamily, McOutcome, TwistedComplex,
};
use novsheaf_core::matrix::Matrix;
use novsheaf_core::metrics::{
    cauchy_limit, check_c_isomorphism, cone_torsion_of_interleaving, hofer_distance, interleaving_distance,
    weak_to_strong, Interleaving,
};
use novsheaf_core::modcat::{
    base_change, normal_form, rank_function, BaseChange, BaseChangeTarget, PresentationModule,
};
use novsheaf_core::novikov::{rat, Exponent, Field, NovikovScalar, Rational, Ring};
use novsheaf_core::persist1d::{cl, cl_invert, intersection_count_check, stability_check, GFObject};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::gen;

pub const DEMOS: &[&str] = &[
    "novikov",
    "nf",
    "torsion",
    "weak",
    "unit",
    "anchors",
    "metric",
    "cauchy",
    "mc",
    "intersection",
    "stability",
    "cl",
    "nakayama",
];

/// Table text plus pass count.
pub struct DemoOutput {
    pub text: String,
    pub passed: usize,
    pub total: usize,
}

impl DemoOutput {
    fn new() -> Self {
        DemoOutput { text: String::new(), passed: 0, total: 0 }
    }

    fn record(&mut self, ok: bool) {
        self.total += 1;
        self.passed += ok as usize;
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

pub fn run(name: &str, seed: u64, field: Field) -> Result<DemoOutput> {
    let mut rng = gen::rng(seed);
    let mut out = DemoOutput::new();
    match name {
        "novikov" => novikov(&mut rng, field, &mut out),
        "nf" => nf(&mut rng, field, &mut out),
        "torsion" => torsion(&mut rng, field, &mut out)?,
        "weak" => weak(&mut rng, field, &mut out)?,
        "unit" => unit(&mut rng, &mut out)?,
        "anchors" => anchors(&mut rng, field, &mut out)?,
        "metric" => metric(&mut rng, field, &mut out)?,
        "cauchy" => cauchy(&mut rng, field, &mut out)?,
        "mc" => mc(&mut rng, field, &mut out)?,
        "intersection" => intersection(&mut rng, &mut out)?,
        "stability" => stability(&mut rng, field, &mut out)?,
        "cl" => classification(&mut rng, field, &mut out)?,
        "nakayama" => nakayama(&mut rng, field, &mut out),
        _ => return Err(Error::Usage(format!("unknown demo `{}`; try one of {}", name, DEMOS.join(", ")))),
    }
    writeln!(out.text, "{}: {}/{} {}", name, out.passed, out.total, if out.ok() { "PASS" } else { "FAIL" }).unwrap();
    Ok(out)
}

fn cutoffs() -> [Exponent; 3] {
    [Exponent::int(1), Exponent::ratio(5, 2), Exponent::Infinite]
}

fn novikov(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) {
    for c in cutoffs() {
        let ring = Ring::new(c.clone(), field);
        let mut ok = 0;
        let n = 100;
        for _ in 0..n {
            let [a, b, d] = [0; 3].map(|_| gen::scalar(rng, &ring, 3, 6, 3));
            let assoc = &(&a * &b) * &d == &a * &(&b * &d);
            let distrib = &a * &(&b + &d) == &(&a * &b) + &(&a * &d);
            let expected = core::cmp::min(a.valuation() + b.valuation(), c.clone());
            let prod = (&a * &b).valuation();
            let val = if expected == c { prod.is_infinite() } else { prod == expected };
            let good = assoc && distrib && val;
            ok += good as usize;
            out.record(good);
        }
        writeln!(out.text, "cutoff {}: {}/{} laws hold", c, ok, n).unwrap();
    }
}

fn nf(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) {
    let ring = Ring::exact(field);
    for i in 0..50 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m = gen::matrix(rng, r, c, &ring, 6, 4);
        let form = normal_form(&PresentationModule::new(m.clone()));
        let good = (0..=30).all(|k| {
            let t = rat(k, 6);
            form.rank_at(&t) == rank_function(&m, &t)
        });
        if i < 5 {
            writeln!(out.text, "{}x{} -> {}", r, c, form).unwrap();
        }
        out.record(good);
    }
}

fn torsion(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    for _ in 0..20 {
        let (map, a) = gen::t_power_map(rng, &Exponent::Infinite, field);
        let order = cone(&map).torsion_order();
        let bound = &a * rat(2, 1);
        let good = !order.exceeds(&bound);
        writeln!(out.text, "cone(T^{}) order {} <= {}", a, order, bound).unwrap();
        out.record(good);
    }
    for _ in 0..20 {
        let e = gen::eq_barcode(rng, &Exponent::Infinite, 4, 4, 4);
        let f = gen::perturb_barcode(rng, &e, &rat(1, 1), 4);
        if let Some(w) = interleaving_distance(&e, &f, field)?.witness {
            let good = cone_torsion_of_interleaving(&w).is_ok();
            out.record(good);
        }
    }
    Ok(())
}

fn weak(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    for _ in 0..20 {
        let w = gen::weak_interleaving(rng, &Exponent::Infinite, field);
        let s = weak_to_strong(&w)?;
        let good =
            s.epsilon == (&w.a + &w.b) * rat(2, 1) && check_c_isomorphism(w.alpha.source(), w.alpha.target(), &s);
        writeln!(out.text, "weak ({}, {}) -> {}-isomorphism", w.a, w.b, s.epsilon).unwrap();
        out.record(good);
    }
    Ok(())
}

fn unit(rng: &mut impl Rng, out: &mut DemoOutput) -> Result<()> {
    for c in cutoffs() {
        for _ in 0..10 {
            let e = gen::eq_barcode(rng, &c, 4, 4, 4);
            let good = star_eq(&e, &EqBarcode::unit(c.clone()))? == e;
            out.record(good);
        }
    }
    writeln!(out.text, "E * 1 = E checked at cutoffs 1, 5/2, inf").unwrap();
    Ok(())
}

fn cyclic(l: Option<&Rational>) -> EqBarcode {
    match l {
        Some(l) => EqBarcode::new(vec![l.clone()], 0, Exponent::Infinite),
        None => EqBarcode::new(vec![], 1, Exponent::Infinite),
    }
    .expect("positive")
}

fn anchors(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    let zero = EqBarcode::zero(Exponent::Infinite);
    for _ in 0..10 {
        let a = gen::positive_grid(rng, 4, 5);
        let b = gen::positive_grid(rng, 4, 5);
        let (ea, eb) = (cyclic(Some(&a)), cyclic(Some(&b)));
        let r1 = interleaving_distance(&ea, &eb, field)?;
        let r2 = interleaving_distance(&ea, &zero, field)?;
        let r3 = interleaving_distance(&cyclic(None), &ea, field)?;
        let diff = Exponent::Finite(if a > b { &a - &b } else { &b - &a });
        let good = r1.upper == diff
            && r1.exact
            && r2.upper == Exponent::Finite(a.clone())
            && r2.exact
            && r3.upper.is_infinite()
            && r3.exact;
        writeln!(out.text, "a={} b={}: {} | {} | {}", a, b, r1, r2, r3).unwrap();
        out.record(good);
    }
    Ok(())
}

fn metric(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    for _ in 0..30 {
        let [e, f, g] = [0; 3].map(|_| gen::eq_barcode(rng, &Exponent::Infinite, 3, 4, 4));
        let ef = interleaving_distance(&e, &f, field)?;
        let fe = interleaving_distance(&f, &e, field)?;
        let fg = interleaving_distance(&f, &g, field)?;
        let eg = interleaving_distance(&e, &g, field)?;
        let symmetric = ef.upper == fe.upper && ef.lower == fe.lower;
        let triangle = eg.upper <= ef.upper.clone() + fg.upper;
        let hofer = hofer_distance(&e, &f) <= ef.upper;
        out.record(symmetric && triangle && hofer);
    }
    writeln!(out.text, "symmetry, triangle inequality and d_H <= d_I on random triples").unwrap();
    Ok(())
}

fn cauchy(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    for _ in 0..10 {
        let (seq, eps) = gen::cauchy_sequence(rng, 6);
        let witnesses: Vec<Interleaving> = seq
            .windows(2)
            .map(|w| interleaving_distance(&w[0], &w[1], field).map(|r| r.witness.expect("finite distance")))
            .collect::<std::result::Result<_, _>>()?;
        let lim = cauchy_limit(&seq, &eps, &witnesses, field)?;
        writeln!(out.text, "limit {} certified={}", lim.limit, lim.certified()).unwrap();
        out.record(lim.certified());
    }
    Ok(())
}

fn mc(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    let a = fixtures::mc_fixture("1/2");
    let mut expected = a.zero();
    expected[1] = -NovikovScalar::t_pow(&rat(1, 2), a.ring());
    let residual_zero = mc_residual(&a, &expected, &[])?.iter().all(NovikovScalar::is_zero);
    let outcome = mc_solve(&a)?;
    let found = matches!(&outcome, McOutcome::Solved(b) if *b == expected);
    writeln!(out.text, "fixture: -T^(1/2)*x is MC: {}; mc_solve returns it: {}", residual_zero, found).unwrap();
    out.record(residual_zero && found);
    let obstructed = matches!(mc_solve(&fixtures::obstruction_fixture())?,
        McOutcome::Obstructed(r) if r.class.iter().any(|c| !c.is_zero()));
    writeln!(out.text, "obstruction fixture reports a nonzero class: {}", obstructed).unwrap();
    out.record(obstructed);
    let ring = Ring::exact(field);
    for _ in 0..20 {
        let t = gen::maybe_broken_twisted_complex(rng, &ring);
        let flat = tc_residual(&t).values().all(Matrix::is_zero);
        out.record(flat == tc_totalize(&t).squares_to_zero());
    }
    for _ in 0..20 {
        let t = gen::twisted_complex(rng, &ring);
        out.record(real_bc_round_trip(&t)?);
    }
    writeln!(out.text, "twisted complexes: totalization and real/bc round trips checked").unwrap();
    Ok(())
}

/// `real(bc(t)) = t` relative to the direct sum of the levels of `t`.
pub fn real_bc_round_trip(t: &TwistedComplex) -> Result<bool> {
    let standard = TwistedComplex::new(t.objects().to_vec(), Default::default(), t.ring().clone())?;
    let fam = EndomorphismFamily::new(standard)?;
    let b = fam.bc(t)?;
    let back = fam.real(&b)?;
    let mc_ok = fam.mc_residual(&b)?.is_zero();
    Ok(&back == t && mc_ok)
}

fn intersection(rng: &mut impl Rng, out: &mut DemoOutput) -> Result<()> {
    writeln!(out.text, "breakpoints lhs rhs").unwrap();
    for _ in 0..20 {
        let (n, m) = (rng.gen_range(2..=8), rng.gen_range(2..=8));
        let f = GFObject::new(gen::pl_circle(rng, n, 4, 3), "f");
        let g = GFObject::new(gen::pl_circle(rng, m, 4, 3), "g");
        let diff = f.f.sub(&g.f)?;
        if !diff.is_generic() {
            continue;
        }
        let (lhs, rhs) = intersection_count_check(&f, &g)?;
        writeln!(out.text, "{} {} {}", diff.len(), lhs, rhs).unwrap();
        out.record(lhs == rhs);
    }
    Ok(())
}

fn stability(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    writeln!(out.text, "osc upper").unwrap();
    for _ in 0..20 {
        let sizes: [usize; 3] = [0; 3].map(|_| rng.gen_range(1..=6));
        let f = GFObject::new(gen::pl_circle_any(rng, sizes[0], 4, &rat(-2, 1), &rat(2, 1)), "f");
        let g = GFObject::new(gen::pl_circle_any(rng, sizes[1], 4, &rat(-2, 1), &rat(2, 1)), "g");
        let h = gen::pl_circle_any(rng, sizes[2], 8, &rat(0, 1), &rat(1, 2));
        let r = stability_check(&f, &g, &h, &Exponent::Infinite, field)?;
        writeln!(out.text, "{} {}", r.oscillation, r.distance.upper).unwrap();
        out.record(r.holds());
    }
    Ok(())
}

fn classification(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) -> Result<()> {
    let ring = Ring::new(Exponent::int(3), field);
    for _ in 0..20 {
        let (b1, b2) = (gen::small_scalar(rng, &ring), gen::small_scalar(rng, &ring));
        let (l1, l2) = (cl(&b1)?, cl(&b2)?);
        let good = cl_invert(&l1) == b1 && (l1.is_isomorphic(&l2) == (b1 == b2));
        out.record(good);
    }
    writeln!(out.text, "cl round trip and injectivity at cutoff 3").unwrap();
    Ok(())
}

fn nakayama(rng: &mut impl Rng, field: Field, out: &mut DemoOutput) {
    let ring = Ring::exact(field);
    for _ in 0..40 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m = PresentationModule::new(gen::matrix(rng, r, c, &ring, 6, 4));
        let rank = match base_change(&m, &BaseChangeTarget::NovikovField) {
            Ok(BaseChange::NovikovField(k)) => k,
            _ => unreachable!(),
        };
        let tor0 = match base_change(&m, &BaseChangeTarget::Residue) {
            Ok(BaseChange::Residue { tor0, .. }) => tor0,
            _ => unreachable!(),
        };
        out.record(rank <= tor0);
    }
    writeln!(out.text, "rank over the Novikov field <= dim Tor0 over the residue field").unwrap();
}
