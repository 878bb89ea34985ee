//! Acceptance gate. Every criterion runs even if an earlier one fails; a
//! summary line per criterion is printed and the test fails if any did.
//!
//! The summary goes straight to stderr so it shows without `--nocapture`.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepvar::fischer::{directness_report, fischer_decompose, fischer_ip, reassemble};
use sepvar::harmonics::{harmonic_basis, isotypic_scan};
use sepvar::ratpoly::{
    monomials_of_multidegree, Ambient, Monomial, MultiDegree, Polynomial, VarIndex,
};
use sepvar::repcomb::{partitions_in_box, Partition};
use sepvar::verma::{check_partition, collapse_detect, semistable};
use sepvar::weyl::lie_closure;
use sepvar::{Cap, Rational};

type Outcome = Result<String, String>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `P(d)` applied to `Q` by repeated differentiation, read off at the origin.
fn apolar_oracle(p: &Polynomial, q: &Polynomial) -> Rational {
    let amb = p.ambient();
    let mut total = Rational::zero();
    for (mono, c) in p.terms() {
        let mut r = q.clone();
        for idx in 0..amb.nvars() {
            for _ in 0..mono.exponent(idx) {
                r = r.derivative(amb.var_at(idx)).unwrap();
            }
        }
        total += c * r.coefficient(&Monomial::one(amb.nvars()));
    }
    total
}

/// `sum_s d^i_s d^j_s P` via plain derivatives.
fn laplacian_oracle(p: &Polynomial, i: usize, j: usize) -> Polynomial {
    let amb = p.ambient();
    let mut acc = Polynomial::zero(amb);
    for s in 1..=amb.m {
        let d = p
            .derivative(VarIndex::new(j, s))
            .unwrap()
            .derivative(VarIndex::new(i, s))
            .unwrap();
        acc = &acc + &d;
    }
    acc
}

fn r2_oracle(amb: Ambient, i: usize, j: usize) -> Polynomial {
    let mut acc = Polynomial::zero(amb);
    for s in 1..=amb.m {
        let a = Polynomial::var(amb, VarIndex::new(i, s)).unwrap();
        let b = Polynomial::var(amb, VarIndex::new(j, s)).unwrap();
        acc = &acc + &(&a * &b);
    }
    acc
}

fn random_homogeneous(rng: &mut ChaCha8Rng, amb: Ambient, d: &MultiDegree) -> Polynomial {
    let monos = monomials_of_multidegree(&amb, d);
    let mut p = Polynomial::zero(amb);
    for mono in monos {
        if rng.gen_bool(0.5) {
            let c = Rational::new(
                rng.gen_range(-9i64..=9).into(),
                rng.gen_range(1i64..=4).into(),
            );
            p = &p + &Polynomial::monomial(amb, mono, c);
        }
    }
    p
}

fn random_polynomial(rng: &mut ChaCha8Rng, amb: Ambient, max_total: u32) -> Polynomial {
    let degrees = MultiDegree::all_up_to(amb.k, max_total);
    let mut p = Polynomial::zero(amb);
    for _ in 0..rng.gen_range(1..=4) {
        let d = &degrees[rng.gen_range(0..degrees.len())];
        p = &p + &random_homogeneous(rng, amb, d);
    }
    p
}

fn binom(n: i64, r: i64) -> i64 {
    if r < 0 || n < r {
        return 0;
    }
    (0..r).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

fn lie_closure_criterion() -> Outcome {
    for k in 1..=2 {
        for m in 1..=5 {
            let rep = lie_closure(Ambient::new(k, m).unwrap());
            ensure(
                rep.failures.is_empty() && rep.gl_failures.is_empty(),
                || {
                    format!(
                        "k={k} m={m}: {} commutators outside the span",
                        rep.failures.len()
                    )
                },
            )?;
            ensure(rep.span_dim == k * (2 * k + 1), || {
                format!("k={k} m={m}: span dim {}", rep.span_dim)
            })?;
            ensure(rep.gl_dim == k * k, || {
                format!("k={k} m={m}: gl dim {}", rep.gl_dim)
            })?;
        }
    }
    Ok("span dims 3 and 10, gl dims 1 and 4, for m = 1..5".into())
}

fn pairing_diagonal_criterion() -> Outcome {
    let amb = Ambient::new(2, 3).unwrap();
    let monos: Vec<Monomial> = MultiDegree::all_up_to(2, 5)
        .iter()
        .flat_map(|d| monomials_of_multidegree(&amb, d))
        .collect();
    let mut pairs = 0usize;
    for a in &monos {
        let pa = Polynomial::monomial(amb, a.clone(), Rational::one());
        let fact = Rational::from_integer(a.factorial());
        for b in &monos {
            let pb = Polynomial::monomial(amb, b.clone(), Rational::one());
            let got = fischer_ip(&pa, &pb).unwrap();
            let want = if a == b {
                fact.clone()
            } else {
                Rational::zero()
            };
            ensure(got == want, || {
                format!("<{pa}, {pb}> = {got}, expected {want}")
            })?;
            // the derivative oracle is slow; run it on the diagonal and a sample
            if a.degree() == b.degree() && (a == b || pairs.is_multiple_of(97)) {
                let oracle = apolar_oracle(&pa, &pb);
                ensure(oracle == want, || format!("oracle <{pa}, {pb}> = {oracle}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{} monomials, {pairs} pairs", monos.len()))
}

fn adjointness_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let pairs_ij = [(1, 1), (1, 2), (2, 2)];
    for (t, amb) in (0..200).map(|t| (t, Ambient::new(2, 1 + t % 4).unwrap())) {
        let (i, j) = pairs_ij[t % 3];
        let mut d = vec![rng.gen_range(0..=2u32), rng.gen_range(0..=2u32)];
        let p = random_homogeneous(&mut rng, amb, &MultiDegree(d.clone()));
        d[i - 1] += 1;
        d[j - 1] += 1;
        let qq = random_homogeneous(&mut rng, amb, &MultiDegree(d));
        let lhs = fischer_ip(&(&r2_oracle(amb, i, j) * &p), &qq).unwrap();
        let rhs = fischer_ip(&p, &laplacian_oracle(&qq, i, j)).unwrap();
        ensure(lhs == rhs, || {
            format!("pair {t} (i={i}, j={j}): {lhs} != {rhs}")
        })?;
        let oracle = apolar_oracle(&(&r2_oracle(amb, i, j) * &p), &qq);
        ensure(oracle == lhs, || {
            format!("pair {t}: pairing disagrees with oracle")
        })?;
    }
    Ok("200 random pairs, m = 1..4".into())
}

fn directness_criterion() -> Outcome {
    let cap = Cap::DEFAULT;
    let mut counts = Vec::new();
    for m in 1..=4 {
        let amb = Ambient::new(2, m).unwrap();
        let rep = directness_report(amb, 4, cap).map_err(|e| e.to_string())?;
        let n = rep.witness_count();
        counts.push(format!("m={m}: {n}"));
        if semistable(m, 2) {
            ensure(n == 0, || {
                format!("m={m}: {n} witnesses in the semistable range")
            })?;
        } else {
            ensure(n >= 1, || {
                format!("m={m}: no witness below the semistable range")
            })?;
        }
        for r in &rep.records {
            ensure(r.rank + r.witnesses.len() == r.assembled_dim, || {
                format!("m={m} {}: rank-nullity", r.multidegree)
            })?;
        }
        if m == 1 {
            let r = rep
                .record(&MultiDegree(vec![2, 2]))
                .ok_or("no record at (2,2)")?;
            ensure(r.witnesses.len() == 1, || {
                format!("(2,2): {} witnesses", r.witnesses.len())
            })?;
            let w = &r.witnesses[0];
            let support: Vec<(&Vec<u32>, &Rational)> = r
                .family
                .iter()
                .zip(w)
                .filter(|(_, c)| !c.is_zero())
                .map(|(f, c)| (f.harmonic_degree.0.as_ref(), c))
                .collect();
            ensure(
                support.len() == 2 && support.iter().all(|(h, _)| h.iter().all(|&x| x == 0)),
                || "witness at (2,2) is not a relation among r^{2n} * 1".into(),
            )?;
            ensure(support[0].1 == &-support[1].1.clone(), || {
                "coefficients are not opposite".into()
            })?;
            let ns: Vec<Vec<u32>> = r
                .family
                .iter()
                .zip(w)
                .filter(|(_, c)| !c.is_zero())
                .map(|(f, _)| f.n.entries().to_vec())
                .collect();
            // upper triangle (n11, n12, n22): r12^4 and r11^2 r22^2
            ensure(
                ns.contains(&vec![0, 2, 0]) && ns.contains(&vec![1, 0, 1]),
                || format!("witness support {ns:?}"),
            )?;
            let r11 = r2_oracle(amb, 1, 1);
            let r12 = r2_oracle(amb, 1, 2);
            let r22 = r2_oracle(amb, 2, 2);
            ensure((&(&r11 * &r22) - &(&r12 * &r12)).is_zero(), || {
                "relation fails".into()
            })?;
        }
    }
    Ok(format!("witnesses {}", counts.join(", ")))
}

fn round_trip_criterion() -> Outcome {
    let amb = Ambient::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut components = 0;
    for t in 0..100 {
        let p = random_polynomial(&mut rng, amb, 5);
        let comps = fischer_decompose(&p, Cap::DEFAULT).map_err(|e| e.to_string())?;
        ensure(reassemble(amb, &comps) == p, || {
            format!("sample {t}: reassembly differs for {p}")
        })?;
        for c in &comps {
            for (i, j) in [(1, 1), (1, 2), (2, 2)] {
                ensure(laplacian_oracle(&c.harmonic, i, j).is_zero(), || {
                    format!("sample {t}: component {} not harmonic", c.n)
                })?;
            }
        }
        components += comps.len();
    }
    Ok(format!("100 samples, {components} components"))
}

fn isotypic_criterion() -> Outcome {
    let mut n = 0;
    for m in [3, 4] {
        let checks = isotypic_scan(Ambient::new(2, m).unwrap(), 4, Cap::DEFAULT)
            .map_err(|e| e.to_string())?;
        ensure(checks.len() == 15, || {
            format!("m={m}: {} multidegrees scanned", checks.len())
        })?;
        for c in &checks {
            ensure(c.matches && c.lhs == c.rhs, || {
                format!("m={m} {}: {} vs {}", c.multidegree, c.lhs, c.rhs)
            })?;
        }
        n += checks.len();
    }
    Ok(format!("{n} multidegrees"))
}

fn verma_criterion() -> Outcome {
    let mut checked = 0;
    for k in 1..=3usize {
        for m in (2 * k - 1)..=8 {
            for a in partitions_in_box(k, 4) {
                let rep = check_partition(&a, m, k).map_err(|e| e.to_string())?;
                ensure(rep.irreducible_sufficient, || {
                    format!("k={k} m={m} a={a}: {} violations", rep.violations())
                })?;
                checked += 1;
            }
        }
    }
    let zero = Partition::new(vec![0, 0]).unwrap();
    for (m, want) in [(1usize, -2i64), (2, -1)] {
        let rep = check_partition(&zero, m, 2).map_err(|e| e.to_string())?;
        let c = rep
            .pair_conditions
            .iter()
            .find(|c| c.i == 1 && c.j == 2)
            .ok_or("missing pair condition")?;
        ensure(c.violated && c.value == q(want), || {
            format!("m={m}: value {} violated {}", c.value, c.violated)
        })?;
        ensure(!rep.irreducible_sufficient, || {
            format!("m={m}: reported as pass")
        })?;
    }
    Ok(format!("{checked} weights pass; (0,0) values -2 and -1"))
}

fn collapse_criterion() -> Outcome {
    let mut scanned = 0;
    for m in [3, 4] {
        let amb = Ambient::new(2, m).unwrap();
        for a in partitions_in_box(2, 2) {
            let rep = collapse_detect(&a, amb, 2, Cap::DEFAULT).map_err(|e| e.to_string())?;
            ensure(!rep.collapsed(), || {
                format!("m={m} a={a}: collapse {:?}", rep.levels)
            })?;
            if !rep.is_empty() {
                ensure(rep.copy_dim as u64 == rep.gl_dim, || {
                    format!("m={m} a={a}: copy dim {}", rep.copy_dim)
                })?;
                for l in &rep.levels {
                    ensure(l.realized_dim == l.free_dim, || {
                        format!("m={m} a={a} g={}", l.g)
                    })?;
                }
                scanned += 1;
            }
        }
    }
    let rep = collapse_detect(
        &Partition::new(vec![0, 0]).unwrap(),
        Ambient::new(2, 1).unwrap(),
        2,
        Cap::DEFAULT,
    )
    .map_err(|e| e.to_string())?;
    let g2 = rep.levels.iter().find(|l| l.g == 2).ok_or("no level g=2")?;
    ensure(
        g2.collapsed && g2.free_dim == 6 && g2.realized_dim == 5,
        || format!("m=1 g=2: free {} realized {}", g2.free_dim, g2.realized_dim),
    )?;
    ensure(
        rep.levels.iter().filter(|l| l.g < 2).all(|l| !l.collapsed),
        || "collapse before g=2".into(),
    )?;
    Ok(format!(
        "{scanned} nonempty shapes with no collapse; m=1 g=2 free 6 realized 5"
    ))
}

fn classical_criterion() -> Outcome {
    for m in 2..=5i64 {
        let amb = Ambient::new(1, m as usize).unwrap();
        for d in 0..=6i64 {
            let got = harmonic_basis(amb, &MultiDegree(vec![d as u32]), Cap::DEFAULT)
                .map_err(|e| e.to_string())?
                .dim() as i64;
            let want = binom(d + m - 1, m - 1) - binom(d + m - 3, m - 1);
            ensure(got == want, || format!("m={m} d={d}: {got} != {want}"))?;
        }
    }
    Ok("d <= 6, m = 2..5".into())
}

fn line(text: String) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{text}");
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

#[test]
fn acceptance_criteria() {
    let criteria = [
        Criterion {
            id: 1,
            name: "lie closure",
            budget: Duration::from_secs(5),
            run: lie_closure_criterion,
        },
        Criterion {
            id: 2,
            name: "fischer pairing diagonal",
            budget: Duration::from_secs(10),
            run: pairing_diagonal_criterion,
        },
        Criterion {
            id: 3,
            name: "adjointness",
            budget: Duration::from_secs(10),
            run: adjointness_criterion,
        },
        Criterion {
            id: 4,
            name: "directness boundary",
            budget: Duration::from_secs(60),
            run: directness_criterion,
        },
        Criterion {
            id: 5,
            name: "decomposition round trip",
            budget: Duration::from_secs(60),
            run: round_trip_criterion,
        },
        Criterion {
            id: 6,
            name: "isotypic dimension identity",
            budget: Duration::from_secs(120),
            run: isotypic_criterion,
        },
        Criterion {
            id: 7,
            name: "verma conditions",
            budget: Duration::from_secs(5),
            run: verma_criterion,
        },
        Criterion {
            id: 8,
            name: "collapse detection",
            budget: Duration::from_secs(120),
            run: collapse_criterion,
        },
        Criterion {
            id: 9,
            name: "k = 1 closed form",
            budget: Duration::from_secs(10),
            run: classical_criterion,
        },
    ];
    // Time budgets apply to optimized builds only.
    let enforce_time = !cfg!(debug_assertions);
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if enforce_time && elapsed > c.budget => Err(format!(
                "{detail}; took {elapsed:.2?}, budget {:?}",
                c.budget
            )),
            other => other,
        };
        match &outcome {
            Ok(detail) => line(format!(
                "PASS  [{}] {:<28} {:>9.2?}  {detail}",
                c.id, c.name, elapsed
            )),
            Err(why) => {
                line(format!(
                    "FAIL  [{}] {:<28} {:>9.2?}  {why}",
                    c.id, c.name, elapsed
                ));
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
