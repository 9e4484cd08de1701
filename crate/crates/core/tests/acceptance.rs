//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::{Duration, Instant};

use isocyclic::codes::{grs_codeword, grs_preimage, mds_construct, Codeword, CyclicCode};
use isocyclic::gf::{Elem, Field, RootOfUnity};
use isocyclic::oracle::{self, null_space};
use isocyclic::poly::{self, Poly};
use isocyclic::splitting::{build_splitting, exists_splitting};
use isocyclic::zn::{self, CosetPartition, QPermutation};

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn root(q: u64, n: u64, pin: Option<&str>) -> Result<RootOfUnity, String> {
    let field = Field::of_order(q).map_err(err)?;
    RootOfUnity::new(&field, n, pin.map(|p| p.parse().unwrap())).map_err(err)
}

fn poly(root: &RootOfUnity, coeffs: &[i64]) -> Poly {
    Poly::from_ints(root.base(), coeffs)
}

fn nonexistence_q3_n8() -> Outcome {
    let e = exists_splitting(3, 8).map_err(err)?;
    ensure!(!e.exists(), "splitting reported for q=3 n=8");
    ensure!(e.nu2_n == 3 && e.nu2_q_minus_1 == Some(1), "valuations {} {:?}", e.nu2_n, e.nu2_q_minus_1);
    let perms = zn::q_permutations(3, 8);
    let mut total = 0;
    for rho in &perms {
        total += oracle::brute_force_splittings(3, 8, rho.s(), rho.t()).map_err(err)?;
    }
    ensure!(total == 0, "{total} splittings found by exhaustion");
    let report = oracle::oracle_splitting_search(3, 8).map_err(err)?;
    ensure!(report.passed(), "{}", report.to_json_line());
    Ok(format!("nu2(8)=3 >= 2 = 2 nu2(2); 0 splittings over {} q-permutations", perms.len()))
}

fn worked_q5_n8() -> Outcome {
    let r = root(5, 8, Some("theta^2=2"))?;
    let s = build_splitting(5, 8, None).map_err(err)?;
    ensure!(s.support == [0, 1, 4, 5], "P = {:?}", s.support);
    let code = CyclicCode::from_support(&s.support, &r).map_err(err)?;
    ensure!(code.check_poly() == &poly(&r, &[2, 0, 2, 0, 1]), "f_P = {}", code.check_poly());
    let image = poly::image_defining_polynomial(code.check_poly(), 1, 2, &r).map_err(err)?;
    ensure!(image == poly(&r, &[2, 0, -2, 0, 1]), "f_rho(P) = {}", image);
    ensure!(image == poly::defining_polynomial(&s.image(), &r).map_err(err)?, "image is not f of rho(P)");
    let dual_side = poly::image_defining_polynomial(code.check_poly(), -1, 2, &r).map_err(err)?;
    ensure!(dual_side == poly(&r, &[-2, 0, -1, 0, 1]), "f_rho(-1,2)(P) = {}", dual_side);
    let cert = code.certify_iso_self_dual().map_err(err)?.ok_or("no certificate")?;
    ensure!((cert.s, cert.t) == (1, 2), "certificate ({}, {})", cert.s, cert.t);
    ensure!(cert.dual_check_poly == dual_side, "dual check polynomial {}", cert.dual_check_poly);
    ensure!(cert.validate(&code), "certificate does not validate");
    Ok(format!(
        "P={:?}, f_P = {}, image {}, dual {}",
        s.support,
        code.check_poly().balanced(),
        image.balanced(),
        dual_side.balanced()
    ))
}

fn worked_q3_n10() -> Outcome {
    let r = root(3, 10, None)?;
    let factors: Vec<Poly> = poly::coset_factors(&r).map_err(err)?.into_iter().map(|(_, f)| f).collect();
    let expected = [poly(&r, &[-1, 1]), poly(&r, &[1, 1]), poly(&r, &[1, 1, 1, 1, 1]), poly(&r, &[1, -1, 1, -1, 1])];
    ensure!(factors.len() == 4 && expected.iter().all(|f| factors.contains(f)), "factors {factors:?}");
    let product = factors.iter().try_fold(Poly::one(r.base()), |acc, f| acc.mul(f)).map_err(err)?;
    ensure!(product == Poly::x_n_minus_one(r.base(), 10), "product is not X^10 - 1");

    let pairs = poly::alternating_pairs(&factors).map_err(err)?.ok_or("no alternating pairing")?;
    let mut named: Vec<[Poly; 2]> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut p = [factors[i].clone(), factors[j].clone()];
            p.sort_by_key(|f| f.to_ints());
            p
        })
        .collect();
    named.sort_by_key(|p| p[0].degree());
    let mut want = vec![[expected[0].clone(), expected[1].clone()], [expected[2].clone(), expected[3].clone()]];
    for p in &mut want {
        p.sort_by_key(|f| f.to_ints());
    }
    ensure!(named == want, "pairs {named:?}");

    let s = build_splitting(3, 10, None).map_err(err)?;
    let code = CyclicCode::from_support(&s.support, &r).map_err(err)?;
    let h = poly(&r, &[-1, 2, -2, 2, -2, 1]);
    ensure!(code.check_poly() == &h, "h = {}", code.check_poly().balanced());
    let h_alt = poly(&r, &[1, 2, 2, 2, 2, 1]);
    ensure!(h.alternating().map_err(err)? == h_alt, "alternating h");
    let cert = code.certify_iso_self_dual().map_err(err)?.ok_or("no certificate")?;
    ensure!(cert.dual_check_poly == h_alt, "dual check {}", cert.dual_check_poly.balanced());
    ensure!(h_alt.monic_reciprocal().map_err(err)? == h_alt, "h~* differs from h~");
    Ok(format!("4 factors, 2 alternating pairs, h = {}, h~* = {}", h.balanced(), h_alt.balanced()))
}

fn mds_q5() -> Outcome {
    let (code, cert) = mds_construct(5, Some("theta^3=-1".parse().unwrap())).map_err(err)?;
    let r = code.root().clone();
    ensure!(code.n() == 6 && code.dimension() == 3, "[{}, {}]", code.n(), code.dimension());
    ensure!(code.check_poly() == &poly(&r, &[-1, 2, -2, 1]), "f_P = {}", code.check_poly().balanced());
    ensure!(code.gen_poly() == &poly(&r, &[1, 2, 2, 1]), "f_P' = {}", code.gen_poly().balanced());
    ensure!(cert.dual_check_poly == poly(&r, &[1, 2, 2, 1]), "f_-P' = {}", cert.dual_check_poly.balanced());
    let dist = code.weight_distribution(1 << 10).map_err(err)?;
    ensure!(dist.iter().sum::<u64>() == 125, "{} words", dist.iter().sum::<u64>());
    let d = code.min_distance(1 << 10).map_err(err)?;
    ensure!(d == Some(4), "d = {d:?}");
    Ok(format!("[6,3,4] over 125 words, weights {dist:?}"))
}

fn mds_q13() -> Outcome {
    let (code, _) = mds_construct(13, None).map_err(err)?;
    ensure!(code.n() == 14 && code.dimension() == 7, "[{}, {}]", code.n(), code.dimension());
    let dist = code.weight_distribution(isocyclic::codes::DEFAULT_ENUMERATION_BOUND).map_err(err)?;
    let total: u64 = dist.iter().sum();
    ensure!(total == 13u64.pow(7), "{total} words");
    let d = dist.iter().enumerate().skip(1).find(|(_, &a)| a > 0).map(|(i, _)| i);
    ensure!(d == Some(8), "d = {d:?}");
    // parallel chunks must not change the result
    let again = code.weight_distribution(isocyclic::codes::DEFAULT_ENUMERATION_BOUND).map_err(err)?;
    ensure!(again == dist, "enumeration is not deterministic");
    Ok(format!("[14,7,8] over {total} words"))
}

fn existence_grid() -> Outcome {
    let qs = [3, 5, 7, 9, 11, 13];
    let reports = oracle::oracle_splitting_grid(&qs, 24).map_err(err)?;
    let failures: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_json_line()).collect();
    ensure!(failures.is_empty(), "{}", failures.join("\n"));
    let yes = reports
        .iter()
        .filter(|r| {
            let mut it = r.instance.split(' ').map(|kv| kv[2..].parse::<u64>().unwrap());
            let (q, n) = (it.next().unwrap(), it.next().unwrap());
            exists_splitting(q, n).unwrap().exists()
        })
        .count();
    Ok(format!("{} coprime (q, n), {yes} with splittings, 0 mismatches", reports.len()))
}

fn orbit_theorem() -> Outcome {
    let mut checked = 0;
    for q in [3u64, 5, 7, 9, 11, 13] {
        for n in (2..=50u64).filter(|n| n % 4 == 2 && zn::gcd(q, *n) == 1) {
            let tau = QPermutation::translation((n / 2) as i64, n, q).map_err(err)?;
            let lengths = oracle::oracle_orbit_lengths(&tau).map_err(err)?;
            ensure!(lengths.iter().all(|&l| l == 2), "q={q} n={n} orbit lengths {lengths:?}");
            let cp = CosetPartition::new(q, n).map_err(err)?;
            let orbits = cp.orbits(&tau).map_err(err)?;
            ensure!(orbits.iter().all(|o| o.len() == 2), "q={q} n={n} constructive orbits {orbits:?}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (q, n) pairs, every tau_n' orbit has length 2"))
}

/// Every union of cosets, as sorted residue lists.
fn invariant_sets(cp: &CosetPartition) -> Vec<Vec<u64>> {
    (0u32..1 << cp.len())
        .map(|mask| {
            let ids: Vec<usize> = (0..cp.len()).filter(|&i| mask >> i & 1 == 1).collect();
            cp.union(&ids)
        })
        .collect()
}

#[derive(Default)]
struct Tally {
    sets: u64,
    gcd_checks: u64,
    dual_checks: u64,
    certified: u64,
    enumerated: u64,
}

fn property_instance(q: u64, n: u64, tally: &mut Tally) -> Result<(), String> {
    let Ok(r) = root(q, n, None) else {
        return Ok(());
    };
    let cp = CosetPartition::new(q, n).map_err(err)?;
    let perms = zn::q_permutations(q, n);
    let xn1 = Poly::x_n_minus_one(r.base(), n);
    for p in invariant_sets(&cp) {
        tally.sets += 1;
        let code = CyclicCode::from_support(&p, &r).map_err(err)?;
        let f = code.check_poly();
        ensure!(f.mul(code.gen_poly()).map_err(err)? == xn1, "q={q} n={n} P={p:?}: f_P f_P' != X^n - 1");
        ensure!(
            f.monic_reciprocal().map_err(err)?
                == poly::defining_polynomial(&poly::negate_set(&p, n), &r).map_err(err)?,
            "q={q} n={n} P={p:?}: reciprocal"
        );
        for rho in &perms {
            let lhs = poly::defining_polynomial(&rho.apply_set(&p), &r).map_err(err)?;
            let rhs = poly::image_defining_polynomial(f, rho.s() as i64, rho.t() as i64, &r).map_err(err)?;
            ensure!(lhs == rhs, "q={q} n={n} P={p:?} rho={rho}: gcd identity");
            tally.gcd_checks += 1;
        }
        let dual = oracle::oracle_dual_basis(&code).map_err(err)?;
        ensure!(dual.passed(), "{}", dual.to_json_line());
        tally.dual_checks += 1;

        if 2 * p.len() as u64 != n || (q as u128).pow(p.len() as u32) > 1 << 10 {
            continue;
        }
        let Some(cert) = code.certify_iso_self_dual().map_err(err)? else {
            continue;
        };
        tally.certified += 1;
        ensure!(cert.validate(&code), "q={q} n={n} P={p:?}: certificate");
        let weights = oracle::oracle_weight_equality(&code, 1 << 10).map_err(err)?;
        ensure!(weights.passed(), "{}", weights.to_json_line());
        let field = code.field();
        let dual_rows = null_space(field, &code.generator_rows(), n as usize);
        let (s, t) = cert.dual_isometry(n);
        let iso = oracle::oracle_isometry(&code, s as u64, t as u64, &dual_rows, 1 << 10).map_err(err)?;
        ensure!(iso.passed(), "{}", iso.to_json_line());
        tally.enumerated += weights.instances_checked;
        // the library's own isometry on every codeword
        for w in all_words(&code) {
            let img = isocyclic::codes::isometry_apply_word(&w, s, t, code.root()).map_err(err)?;
            ensure!(img.weight() == w.weight(), "q={q} n={n} P={p:?}: weight changed");
            ensure!(code.dual().contains(&img), "q={q} n={n} P={p:?}: image outside the dual");
        }
    }
    Ok(())
}

fn all_words(code: &CyclicCode) -> Vec<Codeword> {
    let field = code.field();
    let k = code.dimension();
    let elems: Vec<Elem> = field.elements().collect();
    let total = elems.len().pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let m: Vec<Elem> = (0..k)
                .map(|_| {
                    let e = elems[idx % elems.len()];
                    idx /= elems.len();
                    e
                })
                .collect();
            code.encode(&m).unwrap()
        })
        .collect()
}

fn property_suites() -> Outcome {
    let mut tally = Tally::default();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        for n in (1..=16u64).filter(|&n| zn::gcd(q, n) == 1) {
            property_instance(q, n, &mut tally)?;
        }
    }
    Ok(format!(
        "{} codes, {} gcd identities, {} dual checks, {} certified codes ({} words enumerated)",
        tally.sets, tally.gcd_checks, tally.dual_checks, tally.certified, tally.enumerated
    ))
}

fn grs_q5() -> Outcome {
    let (code, _) = mds_construct(5, Some("theta^3=-1".parse().unwrap())).map_err(err)?;
    let r = code.root();
    let tower = r.tower();
    let ext = r.ext();
    let words = all_words(&code);
    ensure!(words.len() == 125, "{} words", words.len());
    for w in &words {
        let lifted: Vec<Elem> = w.0.iter().map(|&c| tower.embed(c)).collect();
        let a = grs_preimage(&lifted, r).map_err(err)?;
        ensure!(a.is_some(), "codeword {:?} is not a GRS word", w.0);
    }
    // every GRS word vanishes at theta^h, h outside P; count those inside GF(5)^6
    let elems: Vec<Elem> = ext.elements().collect();
    let mut in_base = 0;
    for i in 0..elems.len().pow(3) {
        let coeffs = vec![elems[i % 25], elems[i / 25 % 25], elems[i / 625]];
        let a = Poly::new(ext, coeffs);
        let word = grs_codeword(&a, r).map_err(err)?;
        let as_poly = Poly::new(ext, word.clone());
        for h in code.complement() {
            ensure!(as_poly.eval(r.power(h as i64)).is_zero(), "GRS word nonzero at theta^{h}");
        }
        if word.iter().all(|&c| tower.in_base_field(c)) {
            in_base += 1;
        }
    }
    ensure!(in_base == 125, "{in_base} GRS words over GF(5)");
    Ok(format!(
        "125 codewords interpolated; {} GRS words vanish on the complement, {in_base} lie over GF(5)",
        elems.len().pow(3)
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("nonexistence q=3 n=8", nonexistence_q3_n8, Duration::from_secs(1)),
        ("worked example q=5 n=8", worked_q5_n8, Duration::from_secs(1)),
        ("worked example q=3 n=10", worked_q3_n10, Duration::from_secs(1)),
        ("MDS q=5 [6,3,4]", mds_q5, Duration::from_secs(1)),
        ("MDS q=13 [14,7,8]", mds_q13, Duration::from_secs(120)),
        ("existence equivalence grid", existence_grid, Duration::from_secs(60)),
        ("tau_n' orbit theorem", orbit_theorem, Duration::from_secs(10)),
        ("property suites", property_suites, Duration::from_secs(60)),
        ("GRS restriction q=5", grs_q5, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} criterion {} ({name}) in {:.2?}: {detail}", i + 1, elapsed);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
