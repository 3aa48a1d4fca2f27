use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::commutative::{check_commutative, generate_commutative_instance, Side};
use super::conway::check_conway;
use super::group::{check_group_identity, CayleyTable};
use super::inductive::{check_inductive_laws, check_linear_solutions};
use super::random::random_ninf_series;
use super::report::{CheckReport, Verdict};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::semiring::{
    Booleans, ExtendedNat, ExtendedNaturals, FiniteCarrier, InitialIteration, InitialValue, Nat,
    Naturals, OrderedSemiring, QuotientK, Semiring, SemiringDescriptor, StarSemiring,
};
use crate::series::{Alphabet, Polynomial, SeriesSemiring, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Conway,
    Group,
    Commutative,
    Inductive,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "conway" => Ok(Suite::Conway),
            "group" => Ok(Suite::Group),
            "commutative" => Ok(Suite::Commutative),
            "inductive" => Ok(Suite::Inductive),
            other => Err(Error::Unsupported(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Conway => "conway",
            Suite::Group => "group",
            Suite::Commutative => "commutative",
            Suite::Inductive => "inductive",
        })
    }
}

/// Parameters of a harness run. Trial `i` draws from a generator seeded
/// with `seed + i`, so results do not depend on `exec`.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub semiring: SemiringDescriptor,
    pub trials: usize,
    pub seed: u64,
    /// Restricts the group suite to one table; all built-ins otherwise.
    pub group: Option<CayleyTable>,
    pub alphabet: Alphabet,
    pub maxlen: usize,
    pub exec: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            semiring: SemiringDescriptor::Ninf,
            trials: 50,
            seed: 0,
            group: None,
            alphabet: Alphabet::parse("ab").expect("valid alphabet"),
            maxlen: 6,
            exec: Execution::default(),
        }
    }
}

/// Scalar samples: `full` for pairs and triples, `small` for group tuples.
struct Samples<E> {
    full: Vec<E>,
    small: Vec<E>,
}

/// Runs one suite in the configured semiring. Exhaustive sweeps and
/// seeded trials are folded into one report per identity.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let nat = |v: &[u64]| v.iter().map(|&n| Nat::small(n)).collect::<Vec<_>>();
    let ext = |v: &[u64]| v.iter().map(|&n| ExtendedNat::from(n)).collect::<Vec<_>>();
    match &cfg.semiring {
        SemiringDescriptor::N => {
            run_in(&Naturals, Samples { full: nat(&[0, 1, 2, 3]), small: nat(&[0, 1]) }, suite, cfg)
        }
        SemiringDescriptor::Ninf => {
            let mut full = ext(&[0, 1, 2]);
            full.push(ExtendedNat::Inf);
            let mut small = ext(&[0, 1]);
            small.push(ExtendedNat::Inf);
            let mut reports = run_in(&ExtendedNaturals, Samples { full, small }, suite, cfg)?;
            if suite == Suite::Inductive {
                reports.extend(linear_solutions(cfg)?);
            }
            Ok(reports)
        }
        SemiringDescriptor::Bool => {
            run_in(&Booleans, Samples { full: vec![false, true], small: vec![false, true] }, suite, cfg)
        }
        SemiringDescriptor::QuotientK(k) => {
            let q = QuotientK::new(*k)?;
            let full = q.carrier();
            let small = full.iter().take(3).cloned().collect();
            run_in(&q, Samples { full, small }, suite, cfg)
        }
        SemiringDescriptor::InitialIteration => {
            let full = vec![
                InitialValue::nat(0),
                InitialValue::nat(1),
                InitialValue::nat(2),
                InitialValue::star_pow(1),
                InitialValue::star_pow(2),
                InitialValue::StarStar,
            ];
            let small = vec![InitialValue::nat(0), InitialValue::nat(1), InitialValue::star_pow(1)];
            run_in(&InitialIteration, Samples { full, small }, suite, cfg)
        }
        other => Err(Error::Unsupported(format!("harness over {other}"))),
    }
}

fn run_in<S>(s: &S, samples: Samples<S::Elem>, suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckReport>>
where
    S: StarSemiring + OrderedSemiring + Clone,
{
    let ctx = SeriesSemiring::new(s.clone(), cfg.alphabet.clone(), cfg.maxlen);
    let sweep = format!("{} exhaustive", s.name());
    let trials = format!("{} trials over {}<<{}>> L={}", cfg.trials, s.name(), cfg.alphabet, cfg.maxlen);
    let seeds: Vec<u64> = (0..cfg.trials as u64).map(|i| cfg.seed.wrapping_add(i)).collect();
    let series = |rng: &mut ChaCha8Rng| random_series_in(rng, s, &samples.full, &cfg.alphabet, cfg.maxlen);
    Ok(match suite {
        Suite::Conway => {
            let pairs: Vec<_> = samples.full.iter().flat_map(|a| samples.full.iter().map(move |b| (a, b))).collect();
            let mut out = aggregate(
                pairs.iter().flat_map(|(a, b)| check_conway(s, a, b, &format!("a={a:?} b={b:?}"))),
                &sweep,
            );
            let runs = cfg.exec.map(seeds, |seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (a, b) = (series(&mut rng), series(&mut rng));
                check_conway(&ctx, &a, &b, &format!("seed {seed}"))
            });
            out.extend(aggregate(runs.into_iter().flatten(), &trials));
            out
        }
        Suite::Group => {
            let groups = cfg.group.clone().map_or_else(CayleyTable::builtins, |g| vec![g]);
            let mut out = Vec::new();
            for g in &groups {
                let n = g.order();
                let base = samples.small.len() as u64;
                let count = base.checked_pow(n as u32).ok_or_else(|| Error::Unsupported("too many tuples".into()))?;
                let tuples: Vec<u64> = (0..count).collect();
                let runs = cfg.exec.map(tuples, |mut idx| {
                    let values: Vec<_> = (0..n)
                        .map(|_| {
                            let v = samples.small[(idx % base) as usize].clone();
                            idx /= base;
                            v
                        })
                        .collect();
                    check_group_identity(s, g, &values, &format!("{values:?}"))
                });
                out.extend(aggregate(runs, &sweep));
                let runs = cfg.exec.map(seeds.clone(), |seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let values: Vec<_> = (0..n).map(|_| series(&mut rng)).collect();
                    check_group_identity(&ctx, g, &values, &format!("seed {seed}"))
                });
                out.extend(aggregate(runs, &trials));
            }
            out
        }
        Suite::Commutative => {
            let bound = cfg.maxlen.min(5);
            let nat_ctx = SeriesSemiring::new(Naturals, cfg.alphabet.clone(), bound);
            let runs = cfg.exec.map(seeds, |seed| -> Result<Vec<CheckReport>> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = rng.random_range(1..=3);
                let m = rng.random_range(n..=4);
                let k = rng.random_range(0..=3);
                let inst = generate_commutative_instance(seed, m, n, k, &cfg.alphabet)?;
                let images: Vec<_> = (0..cfg.alphabet.len())
                    .map(|_| samples.full[rng.random_range(0..samples.full.len())].clone())
                    .collect();
                let mut reports = Vec::with_capacity(4);
                for side in [Side::Primal, Side::Dual] {
                    let to_series = |p: &Polynomial<Nat>| Ok(p.to_series(bound));
                    reports.push(check_commutative(&nat_ctx, &inst, &to_series, side, "series")?);
                    let scalar = |p: &Polynomial<Nat>| Ok(poly_in(s, p, &images));
                    let label = format!("{} letters={images:?}", s.name());
                    reports.push(match check_commutative(s, &inst, &scalar, side, &label) {
                        Ok(r) => r,
                        Err(e @ Error::NotInStarDomain(_)) => CheckReport::skip(&format!("{side:?}"), &label, e),
                        Err(e) => return Err(e),
                    });
                }
                Ok(reports)
            });
            let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
            aggregate(runs.into_iter().flatten(), &format!("{} seeded instances", cfg.trials))
        }
        Suite::Inductive => {
            let mut out = check_inductive_laws(s, &samples.full, &sweep);
            let bound = cfg.maxlen.min(4);
            let small_ctx = SeriesSemiring::new(s.clone(), cfg.alphabet.clone(), bound);
            let runs = cfg.exec.map(seeds, |seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut xs: Vec<_> =
                    (0..4).map(|_| random_series_in(&mut rng, s, &samples.full, &cfg.alphabet, bound)).collect();
                xs.push(small_ctx.zero());
                check_inductive_laws(&small_ctx, &xs, &format!("seed {seed}"))
            });
            out.extend(aggregate(
                runs.into_iter().flatten(),
                &format!("{} trials over {}<<{}>> L={bound}", cfg.trials, s.name(), cfg.alphabet),
            ));
            out
        }
    })
}

/// Solutions of `x = sx + r` for each value class of the constant of `s`.
fn linear_solutions(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let ctx = SeriesSemiring::new(ExtendedNaturals, cfg.alphabet.clone(), cfg.maxlen);
    let seeds: Vec<u64> = (0..cfg.trials as u64).map(|i| cfg.seed.wrapping_add(i)).collect();
    let mut out = Vec::new();
    for k in [0u64, 1, 2] {
        let runs = cfg.exec.map(seeds.clone(), |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let proper = random_ninf_series(&mut rng, &cfg.alphabet, cfg.maxlen, 2);
            let proper = TruncatedSeries::from_pairs(
                &ExtendedNaturals,
                cfg.alphabet.clone(),
                cfg.maxlen,
                proper.iter().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c.clone())),
            );
            let s = ctx.add(&ctx.constant(k.into()), &proper);
            let r = random_ninf_series(&mut rng, &cfg.alphabet, cfg.maxlen, 2);
            let t = random_ninf_series(&mut rng, &cfg.alphabet, cfg.maxlen, 2);
            check_linear_solutions(&s, &r, &t, &format!("seed {seed}"))
        });
        let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
        let instance = format!("{} trials, constant of s = {k}, L={}", cfg.trials, cfg.maxlen);
        out.extend(aggregate(runs, &instance));
    }
    Ok(out)
}

/// `p` evaluated in `s` with letter `i` sent to `images[i]`.
fn poly_in<S: StarSemiring>(s: &S, p: &Polynomial<Nat>, images: &[S::Elem]) -> S::Elem {
    p.iter().fold(s.zero(), |acc, (w, c)| {
        let word = w.indices().iter().fold(s.one(), |x, &i| s.mul(&x, &images[i as usize]));
        s.add(&acc, &s.mul(&s.from_nat(c), &word))
    })
}

/// A series with support on words of length at most two and coefficients
/// drawn from `values`; the constant term is kept in the star domain.
fn random_series_in<S: StarSemiring>(
    rng: &mut ChaCha8Rng,
    s: &S,
    values: &[S::Elem],
    alphabet: &Alphabet,
    bound: usize,
) -> TruncatedSeries<S::Elem> {
    let starrable: Vec<_> = values.iter().filter(|v| s.in_star_domain(v)).collect();
    let pairs: Vec<_> = alphabet
        .words_up_to(bound.min(2))
        .map(|w| {
            let v = if w.is_empty() {
                starrable[rng.random_range(0..starrable.len())].clone()
            } else {
                values[rng.random_range(0..values.len())].clone()
            };
            (w, v)
        })
        .collect();
    TruncatedSeries::from_pairs(s, alphabet.clone(), bound, pairs)
}

/// One report per identity: the first failure if any, otherwise a pass
/// counting passes and skips, or a skip when nothing was decidable.
fn aggregate(reports: impl IntoIterator<Item = CheckReport>, instance: &str) -> Vec<CheckReport> {
    let mut order: Vec<String> = Vec::new();
    let mut groups: Vec<(usize, usize, Option<CheckReport>, Option<CheckReport>)> = Vec::new();
    for r in reports {
        let idx = match order.iter().position(|n| *n == r.identity) {
            Some(i) => i,
            None => {
                order.push(r.identity.clone());
                groups.push((0, 0, None, None));
                order.len() - 1
            }
        };
        let g = &mut groups[idx];
        match r.verdict {
            Verdict::Pass => g.0 += 1,
            Verdict::Skip => {
                g.1 += 1;
                g.3.get_or_insert(r);
            }
            Verdict::Fail => {
                g.2.get_or_insert(r);
            }
        }
    }
    order
        .into_iter()
        .zip(groups)
        .map(|(name, (passed, skipped, fail, skip))| match (fail, passed) {
            (Some(f), _) => CheckReport::fail(&name, &format!("{instance}: {}", f.instance), f.detail),
            (None, 0) => {
                let reason = skip.map(|r| r.detail).unwrap_or_default();
                CheckReport::skip(&name, instance, format!("{skipped} skipped: {reason}"))
            }
            (None, _) => {
                let mut r = CheckReport::pass(&name, instance);
                r.detail = format!("{passed} passed, {skipped} skipped");
                r
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(semiring: SemiringDescriptor, trials: usize) -> SuiteConfig {
        SuiteConfig { semiring, trials, maxlen: 4, ..SuiteConfig::default() }
    }

    #[test]
    fn all_suites_pass_over_ninf() {
        for suite in [Suite::Conway, Suite::Group, Suite::Commutative, Suite::Inductive] {
            let reports = run_suite(suite, &cfg(SemiringDescriptor::Ninf, 5)).unwrap();
            assert!(!reports.is_empty());
            assert!(reports.iter().all(|r| r.verdict != Verdict::Fail), "{suite}: {reports:#?}");
        }
    }

    #[test]
    fn other_semirings() {
        for d in [SemiringDescriptor::N, SemiringDescriptor::Bool, SemiringDescriptor::QuotientK(2)] {
            for suite in [Suite::Conway, Suite::Inductive, Suite::Commutative] {
                let reports = run_suite(suite, &cfg(d.clone(), 3)).unwrap();
                assert!(reports.iter().all(|r| r.verdict != Verdict::Fail), "{d} {suite}: {reports:#?}");
            }
        }
        let mut c = cfg(SemiringDescriptor::InitialIteration, 2);
        c.group = Some(CayleyTable::cyclic(2).unwrap());
        for suite in [Suite::Conway, Suite::Group] {
            let reports = run_suite(suite, &c).unwrap();
            assert!(reports.iter().all(|r| r.verdict != Verdict::Fail), "{suite}: {reports:#?}");
        }
    }

    #[test]
    fn initial_iteration_is_not_inductive() {
        // 1*1* = (1*)^2 lies above the pre-fixed point 1* of x = x + 1*.
        let c = cfg(SemiringDescriptor::InitialIteration, 1);
        let reports = run_suite(Suite::Inductive, &c).unwrap();
        let rule = reports.iter().find(|r| r.identity.starts_with("ax + b")).unwrap();
        assert_eq!(rule.verdict, Verdict::Fail);
        assert!(rule.detail.contains("lhs=1*^2"), "{}", rule.detail);
        assert!(reports[0].passed());
    }

    #[test]
    fn deterministic_across_executions() {
        let mut c = cfg(SemiringDescriptor::Ninf, 4);
        c.group = Some(CayleyTable::cyclic(3).unwrap());
        let seq = run_suite(Suite::Group, &SuiteConfig { exec: Execution::Sequential, ..c.clone() }).unwrap();
        assert_eq!(seq, run_suite(Suite::Group, &c).unwrap());
        assert_eq!("inductive".parse::<Suite>().unwrap(), Suite::Inductive);
    }
}
