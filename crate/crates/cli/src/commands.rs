use crate::{cache, emit, AsymCommand, CriticalArgs, FitArgs, LocusArgs, OracleArgs, RelArgs, SeriesArgs, SpectralArgs, Uniform, ZerosArgs};
use anyhow::{Context, Result};
use ladderrel::asym::{asymptote, fit_exponent, verify_dominant_balance, Feature, Sample};
use ladderrel::exact::{fmt_rational, parse_rational, Rational};
use ladderrel::genfunc::{at_p, builtin_gf, closed_forms, gf_from_transfer, gf_to_json, series as gf_series};
use ladderrel::graphs::{uniform_spec, Destination, Family, FamilySpec};
use ladderrel::mp::{fmt_float, BigComplex};
use ladderrel::oracle::check::equivalence_suite;
use ladderrel::transfer::{reliability, reliability_polynomial};
use ladderrel::zeros::critical::{bisect_structure, CriticalPoint, critical_rho_exact, preset, presets, Structure};
use ladderrel::zeros::locus::{complex_roots, isolated_zeros};
use ladderrel::zeros::{lambda_max, locus as fixed_locus, locus_symbolic, LocusKind, ZeroSet};
use ladderrel::Error;
use rayon::prelude::*;
use rug::Float;
use std::fs;

const DIGITS: usize = 20;

pub fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Invalid(format!("not a rational number: {s:?}")).into())
}

fn family(s: &str) -> Result<Family> {
    Ok(s.parse::<Family>()?)
}

fn dest(s: &Option<String>) -> Result<Option<Destination>> {
    Ok(s.as_deref().map(str::parse::<Destination>).transpose()?)
}

fn uniform(u: &Uniform) -> Result<(Family, usize, Rational, Option<Destination>)> {
    let f = u.family.as_deref().ok_or_else(|| Error::Invalid("--family is required".into()))?;
    let n = u.n.ok_or_else(|| Error::Invalid("--n is required".into()))?;
    let family = family(f)?;
    Ok((family, n, rational(&u.rho)?, dest(&u.dest)?.or_else(|| family.default_destination())))
}

fn range(s: &str) -> Result<(Rational, Rational)> {
    let (a, b) = s.split_once(':').ok_or_else(|| Error::Invalid(format!("expected lo:hi, got {s:?}")))?;
    Ok((rational(a)?, rational(b)?))
}

/// `re`, or `re+imi` when the imaginary part is nonzero.
pub fn fmt_complex(z: &BigComplex) -> String {
    let (re, im) = z.fmt_digits(DIGITS);
    if z.im.is_zero() {
        re
    } else if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

pub fn rel(a: RelArgs) -> Result<u8> {
    if let Some(path) = a.spec {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let spec = FamilySpec::<Rational>::from_json(&text)?;
        outln!("{}", fmt_rational(&reliability(&spec)?));
        return Ok(0);
    }
    let (family, n, rho, dest) = uniform(&a.uniform)?;
    match a.p {
        Some(p) => {
            let spec = uniform_spec(family, n, &rational(&p)?, &rho, dest)?;
            outln!("{}", fmt_rational(&reliability(&spec)?));
        }
        None => outln!("{}", reliability_polynomial(family, n, &rho, dest)?),
    }
    Ok(0)
}

pub fn series(a: SeriesArgs) -> Result<u8> {
    let u = &a.uniform;
    let family = family(u.family.as_deref().ok_or_else(|| Error::Invalid("--family is required".into()))?)?;
    let rho = rational(&u.rho)?;
    let d = dest(&u.dest)?.or_else(|| family.default_destination());
    let g = if a.builtin { builtin_gf(family, &rho)? } else { gf_from_transfer(family, &rho, d)?.as_ref().clone() };
    if a.gf {
        outln!("{}", serde_json::to_string_pretty(&gf_to_json(&g))?);
        return Ok(0);
    }
    let n = u.n.ok_or_else(|| Error::Invalid("--n is required unless --gf is given".into()))?;
    match &a.p {
        Some(p) => {
            for (k, c) in gf_series(&at_p(&g, &rational(p)?), n).iter().enumerate() {
                outln!("{k} {}", fmt_rational(c));
            }
        }
        None => {
            for (k, c) in gf_series(&g, n).iter().enumerate() {
                outln!("{k} {c}");
            }
        }
    }
    Ok(0)
}

pub fn spectral(a: SpectralArgs) -> Result<u8> {
    let p = rational(&a.p)?;
    let s = closed_forms(&p, a.precision)?;
    outln!("disc_a={}", fmt_float(&s.disc_a, DIGITS));
    outln!("lambda_plus={}", fmt_complex(&s.lambda_plus));
    outln!("lambda_minus={}", fmt_complex(&s.lambda_minus));
    outln!("a_plus={}", fmt_complex(&s.a_plus));
    outln!("a_minus={}", fmt_complex(&s.a_minus));
    match &s.xi {
        Some(x) => outln!("xi={}", fmt_float(x, DIGITS)),
        None => outln!("xi=none"),
    }
    outln!("disc_b={}", fmt_float(&s.disc_b, DIGITS));
    outln!("zeta_plus={}", fmt_complex(&s.zeta_plus));
    outln!("zeta_minus={}", fmt_complex(&s.zeta_minus));
    let l = lambda_max(family(&a.family)?, &p, &rational(&a.rho)?, a.precision)?;
    outln!("lambda_max={}", fmt_complex(&l));
    Ok(0)
}

pub fn zeros(a: ZerosArgs) -> Result<u8> {
    let (family, n, rho, dest) = uniform(&a.uniform)?;
    let z = cache::scatter(family, n, &rho, dest, a.precision)?;
    eprintln!("degree {} at {} bits, worst residual {}", z.degree(), z.precision, fmt_float(&z.max_residual(), 3));
    let text = match a.format.as_str() {
        "json" => serde_json::to_string_pretty(&z.to_json())? + "\n",
        _ => z.to_csv(),
    };
    match a.out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => emit(format_args!("{text}")),
    }
    Ok(0)
}

pub fn locus(a: LocusArgs) -> Result<u8> {
    let family = family(&a.family)?;
    let kind: LocusKind = a.kind.parse()?;
    if a.symbolic {
        outln!("{}", locus_symbolic(family, kind)?);
        return Ok(0);
    }
    let rho = rational(a.rho.as_deref().unwrap_or("1"))?;
    let f = fixed_locus(family, kind, &rho)?;
    outln!("{f}");
    if !a.roots {
        return Ok(0);
    }
    if kind == LocusKind::Isolated {
        outln!("re,im,valid,margin");
        for z in isolated_zeros(family, &rho, a.precision)? {
            let (re, im) = z.p.fmt_digits(DIGITS);
            let m = z.dominance.shared_margin.map_or("nan".to_string(), |m| format!("{m:.6e}"));
            outln!("{re},{im},{},{m}", z.is_valid());
        }
    } else {
        let c: Vec<BigComplex> = f.coeffs().iter().map(|c| BigComplex::real(Float::with_val(a.precision, c))).collect();
        outln!("re,im");
        for z in complex_roots(&c, a.precision)? {
            let (re, im) = z.fmt_digits(DIGITS);
            outln!("{re},{im}");
        }
    }
    Ok(0)
}

pub fn critical(a: CriticalArgs) -> Result<u8> {
    if a.list_presets {
        for p in presets() {
            outln!("{} family={} structure={:?} bracket={}:{}", p.name, p.family, p.structure, fmt_rational(&p.lo), fmt_rational(&p.hi));
        }
        return Ok(0);
    }
    if a.mode == "bisect" {
        return bisect(&a);
    }
    let family = family(&a.family)?;
    let kinds: Vec<LocusKind> = a.loci.split(',').map(str::parse).collect::<Result<_, _>>()?;
    let [k1, k2] = kinds[..] else {
        return Err(Error::Invalid("--loci takes exactly two kinds".into()).into());
    };
    let (lo, hi) = range(&a.range)?;
    let e = critical_rho_exact(&locus_symbolic(family, k1)?, &locus_symbolic(family, k2)?)?;
    eprintln!("eliminant degrees: rho {}, p {}", e.rho_eliminant.deg0(), e.p_eliminant.deg0());
    let strict = |c: &&CriticalPoint| {
        let f = c.rho_poly.to_rational();
        c.rho > lo && c.rho < hi && f.eval(&lo) != 0 && f.eval(&hi) != 0
    };
    let inside = e.points.iter().filter(strict);
    for (i, c) in inside.enumerate() {
        if i > 0 {
            outln!("");
        }
        outln!("rho_c={}", fmt_float(&c.rho, DIGITS));
        outln!("p_c={}", fmt_float(&c.p, DIGITS));
        outln!("rho_poly={}", c.rho_poly);
        outln!("p_poly={}", c.p_poly);
    }
    Ok(0)
}

fn bisect(a: &CriticalArgs) -> Result<u8> {
    let (family, structure, lo, hi) = match &a.preset {
        Some(name) => {
            let p = preset(name)?;
            (p.family, p.structure, p.lo, p.hi)
        }
        None => {
            let s = a.structure.as_deref().ok_or_else(|| Error::Invalid("--structure or --preset is required".into()))?;
            let b = a.bracket.as_deref().ok_or_else(|| Error::Invalid("--bracket is required".into()))?;
            let (lo, hi) = range(b)?;
            (family(&a.family)?, s.parse::<Structure>()?, lo, hi)
        }
    };
    let b = bisect_structure(family, structure, &lo, &hi, a.tol)?;
    outln!("rho_c={}", fmt_float(&Float::with_val(128, &b.rho), DIGITS));
    outln!("holds={}", b.observation.holds);
    if let Some(p) = &b.observation.p {
        outln!("p={}", fmt_complex(p));
    }
    outln!("margin={:e}", b.observation.margin);
    Ok(0)
}

pub fn asym(c: AsymCommand) -> Result<u8> {
    match c {
        AsymCommand::Predict { feature, rho } => {
            let f: Feature = feature.parse()?;
            let pr = asymptote(f, rational(&rho)?.to_f64())?;
            let m = f.model();
            outln!("exponent={}", fmt_rational(&m.exponent));
            outln!("scale={:.15e}", pr.scale);
            if m.directions.is_empty() {
                outln!("centre={}", m.offset.re);
                outln!("radius={:.15e}", pr.scale + m.shift);
            }
            for v in pr.values {
                outln!("value={:.15e}{:+.15e}i", v.re, v.im);
            }
        }
        AsymCommand::Fit(a) => fit(a)?,
        AsymCommand::Balance { family: f, kind, exponent } => {
            let locus = locus_symbolic(family(&f)?, kind.parse()?)?;
            let b = verify_dominant_balance(&locus, &rational(&exponent)?)?;
            outln!("order={}", fmt_rational(&b.order));
            outln!("equation={}", b.equation);
            for r in b.roots {
                outln!("root={:.15e}{:+.15e}i", r.re, r.im);
            }
        }
    }
    Ok(0)
}

fn fit(a: FitArgs) -> Result<()> {
    let feature: Feature = a.feature.parse()?;
    let selector = feature.selector().ok_or_else(|| Error::FeatureAbsent(format!("{feature} cannot be read off a scatter")))?;
    let mut sets = Vec::new();
    for path in &a.scatters {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        sets.push(ZeroSet::from_json(&serde_json::from_str(&text)?)?);
    }
    let rhos: Vec<Rational> = a.rhos.iter().map(|s| rational(s)).collect::<Result<_>>()?;
    let n_max = a.n.iter().copied().max().unwrap_or(100);
    let smallest = rhos.iter().min().cloned();
    let mut jobs = Vec::new();
    for r in &rhos {
        if Some(r) == smallest.as_ref() {
            jobs.extend(a.n.iter().map(|&n| (r.clone(), n)));
        } else {
            jobs.push((r.clone(), n_max));
        }
    }
    let family = feature.family();
    let computed: Vec<ZeroSet> = jobs.par_iter().map(|(r, n)| cache::scatter(family, *n, r, None, None)).collect::<ladderrel::Result<_>>()?;
    sets.extend(computed);
    let samples: Vec<Sample> = sets.iter().map(Sample::from_zero_set).collect::<ladderrel::Result<_>>()?;
    let model = feature.model();
    let reference = a.reference.then_some(&model.exponent);
    let report = fit_exponent(&samples, selector, reference, feature.name())?;
    outln!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

pub fn oracle_check(a: OracleArgs) -> Result<u8> {
    let r = equivalence_suite(a.seed, a.trials, a.graphs)?;
    for c in &r.cases {
        outln!("{} trials={} failures={}", c.label, c.trials, c.failures);
    }
    let ok = r.passed();
    outln!("{}", if ok { "all passed" } else { "FAILED" });
    Ok(if ok { 0 } else { 1 })
}
