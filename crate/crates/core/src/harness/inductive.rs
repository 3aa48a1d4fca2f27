use super::report::CheckReport;
use crate::automata::solve_linear;
use crate::error::Result;
use crate::semiring::{ExtendedNat, ExtendedNaturals, OrderedSemiring, Semiring, StarSemiring};
use crate::series::{render_series, SeriesSemiring, TruncatedSeries};

/// Checks `aa* + 1 ≤ a*`, both fixed-point induction rules over every
/// triple of samples whose premise holds, and `1*a = a1*`.
///
/// Samples outside the star domain are skipped for the laws that star them.
pub fn check_inductive_laws<S>(s: &S, samples: &[S::Elem], instance: &str) -> Vec<CheckReport>
where
    S: StarSemiring + OrderedSemiring,
{
    let mut reports = Vec::with_capacity(4);
    let starred: Vec<_> = samples.iter().filter_map(|a| s.star(a).ok().map(|st| (a, st))).collect();
    let skipped = samples.len() - starred.len();
    let note = |n: usize| format!("{instance}; {n} cases, {skipped} samples outside the star domain");

    let name = "aa* + 1 <= a*";
    let bad = starred.iter().find(|(a, st)| !s.le(&s.add(&s.mul(a, st), &s.one()), st));
    reports.push(match bad {
        Some((a, st)) => CheckReport::fail(name, instance, format!("a={a:?} a*={st:?}")),
        None => CheckReport::pass(name, &note(starred.len())),
    });

    let rules: [(&str, bool); 2] = [("ax + b <= x => a*b <= x", true), ("xa + b <= x => ba* <= x", false)];
    for (name, left) in rules {
        let mut cases = 0;
        let mut failure = None;
        'outer: for (a, st) in &starred {
            for b in samples {
                for x in samples {
                    let (ax, conclusion) =
                        if left { (s.mul(a, x), s.mul(st, b)) } else { (s.mul(x, a), s.mul(b, st)) };
                    if !s.le(&s.add(&ax, b), x) {
                        continue;
                    }
                    cases += 1;
                    if !s.le(&conclusion, x) {
                        failure = Some(format!("a={a:?} b={b:?} x={x:?} lhs={conclusion:?}"));
                        break 'outer;
                    }
                }
            }
        }
        reports.push(match failure {
            Some(detail) => CheckReport::fail(name, instance, detail),
            None => CheckReport::pass(name, &note(cases)),
        });
    }

    let name = "1*a = a1*";
    match s.star(&s.one()) {
        Ok(one_star) => {
            let bad = samples.iter().find(|a| s.mul(&one_star, a) != s.mul(a, &one_star));
            reports.push(match bad {
                Some(a) => CheckReport::compare(name, instance, &s.mul(&one_star, a), &s.mul(a, &one_star)),
                None => CheckReport::pass(name, &note(samples.len())),
            });
        }
        Err(e) => reports.push(CheckReport::skip(name, instance, e)),
    }
    reports
}

/// Checks that `x = solve_linear(s, r, t)` satisfies `x = sx + r` and
/// `s*r ≤ x` pointwise at the common truncation.
pub fn check_linear_solutions(
    s: &TruncatedSeries<ExtendedNat>,
    r: &TruncatedSeries<ExtendedNat>,
    t: &TruncatedSeries<ExtendedNat>,
    instance: &str,
) -> Result<CheckReport> {
    let x = solve_linear(s, r, t)?;
    let ctx = SeriesSemiring::new(ExtendedNaturals, s.alphabet().clone(), x.bound());
    let rhs = ctx.add(&ctx.mul(s, &x), r);
    let show = |v: &TruncatedSeries<ExtendedNat>| render_series(&ExtendedNaturals, v, true);
    if rhs != x {
        return Ok(CheckReport::fail("x = sx + r", instance, format!("x={} sx+r={}", show(&x), show(&rhs))));
    }
    let least = ctx.mul(&ctx.star(s)?, r);
    Ok(if ctx.le(&least, &x) {
        CheckReport::pass("x = sx + r, s*r <= x", instance)
    } else {
        CheckReport::fail("s*r <= x", instance, format!("s*r={} x={}", show(&least), show(&x)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Nat;
    use crate::series::Alphabet;

    #[test]
    fn ninf_exhaustive() {
        let samples: Vec<ExtendedNat> = vec![0u64.into(), 1u64.into(), 2u64.into(), ExtendedNat::Inf];
        let r = check_inductive_laws(&ExtendedNaturals, &samples, "{0,1,2,inf}");
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(CheckReport::passed), "{r:?}");
    }

    #[test]
    fn zero_only() {
        let r = check_inductive_laws(&ExtendedNaturals, &[ExtendedNat::ZERO], "0");
        assert!(r.iter().all(CheckReport::passed));
    }

    #[test]
    fn series_samples_and_solutions() {
        let ab = Alphabet::parse("ab").unwrap();
        let ctx = SeriesSemiring::new(ExtendedNaturals, ab.clone(), 3);
        let (a, b) = (ctx.letter('a').unwrap(), ctx.letter('b').unwrap());
        let samples = vec![ctx.zero(), a.clone(), b.clone(), ctx.add(&a, &ctx.one()), ctx.star(&a).unwrap()];
        assert!(check_inductive_laws(&ctx, &samples, "series").iter().all(CheckReport::passed));

        let nat = SeriesSemiring::new(crate::semiring::Naturals, ab, 3);
        let r = check_inductive_laws(&nat, &[nat.zero(), nat.constant(Nat::ONE)], "n series");
        assert!(r.iter().any(|c| c.verdict == crate::harness::Verdict::Skip));

        for k in [0u64, 1, 2] {
            let s = ctx.add(&ctx.constant(k.into()), &a);
            let rep = check_linear_solutions(&s, &ctx.one(), &b, "k").unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }
}
