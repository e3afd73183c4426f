//! Exit criteria. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails. All comparisons are exact; runtime budgets are in seconds.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kdyck::bounded::{bounded_count, bounded_series, max_height_count, BoundedQuery};
use kdyck::filters::*;
use kdyck::oeis::tables::{regenerate_table, CellEntry, CellOutcome, TableId};
use kdyck::oeis::{MatchConfig, Snapshot};
use kdyck::oracle::{enumerate, oracle_count, PathFilter};
use kdyck::shape::*;
use kdyck::{catalan_series, raney, ExactInt, TruncatedSeries, K};

fn k(v: u32) -> K {
    K::new(v).unwrap()
}

struct Outcome {
    failures: Vec<String>,
    checked: u64,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            checked: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq(&mut self, a: &ExactInt, b: &ExactInt, what: impl FnOnce() -> String) {
        self.check(a == b, || format!("{}: {a} != {b}", what()));
    }
}

fn report(id: u32, title: &str, out: Outcome, elapsed: Duration, budget: Option<u64>) -> bool {
    let over = budget.is_some_and(|b| elapsed > Duration::from_secs(b));
    let pass = out.failures.is_empty() && !over;
    let budget_note = budget.map(|b| format!(", budget {b}s")).unwrap_or_default();
    println!(
        "criterion {id} [{}] {title}: {} checks, {} failures, {:.2}s{budget_note}",
        if pass { "PASS" } else { "FAIL" },
        out.checked,
        out.failures.len(),
        elapsed.as_secs_f64(),
    );
    for f in out.failures.iter().take(100) {
        println!("    {f}");
    }
    if out.failures.len() > 100 {
        println!("    ... {} more", out.failures.len() - 100);
    }
    if over {
        println!("    runtime exceeded budget");
    }
    pass
}

fn formula_agreement() -> Outcome {
    let mut o = Outcome::new();
    for kv in 2..=4 {
        for a in 0..=6 {
            for b in 0..=6 {
                let series = shape_series(k(kv), Shape::new(a, b), 6);
                for n in 0..=6 {
                    let q = PathClassQuery::new(k(kv), n, Shape::new(a, b));
                    let closed = count_closed(&q);
                    let brute = ExactInt::from(enumerate(&q, &PathFilter::none()).unwrap().count());
                    let tag = || format!("{q}");
                    o.eq(&closed, &count_recurrence(&q), || {
                        format!("recurrence {}", tag())
                    });
                    o.eq(&closed, series.coeff(n), || format!("series {}", tag()));
                    o.eq(&closed, &brute, || format!("enumeration {}", tag()));
                }
            }
        }
    }
    o
}

fn k2_specializations() -> Outcome {
    let mut o = Outcome::new();
    for a in 0..=6 {
        for b in 0..=6 {
            let s = Shape::new(a, b);
            o.check(k2_shape_series(s, 8) == shape_series(K::TWO, s, 8), || {
                format!("k2 series {s}")
            });
            for n in 0..=8 {
                let q = PathClassQuery::new(K::TWO, n, s);
                o.eq(&k2_count(n, s), &count_closed(&q), || {
                    format!("k2 count {q}")
                });
                // reflection: (b,a) lags (a,b) by b-a
                if b >= a {
                    let d = b - a;
                    let flipped = count_closed(&PathClassQuery::new(K::TWO, n, Shape::new(b, a)));
                    let expect = if n < d {
                        ExactInt::from(0)
                    } else {
                        count_closed(&PathClassQuery::new(K::TWO, n - d, s))
                    };
                    o.eq(&flipped, &expect, || format!("reflection n={n} {s}"));
                }
            }
        }
    }
    o
}

fn min_height() -> Outcome {
    let mut o = Outcome::new();
    for kv in 2..=3 {
        for a in 0..=4usize {
            for b in 0..=4usize {
                let s = Shape::new(a, b);
                let all: Vec<TruncatedSeries> = (0..=a.min(b))
                    .map(|m| minheight_series(k(kv), s, m, 6))
                    .collect();
                for n in 0..=6 {
                    let q = PathClassQuery::new(k(kv), n, s);
                    let mut total = ExactInt::from(0);
                    for (m, series) in all.iter().enumerate() {
                        let tag = || format!("{q} m={m}");
                        let general = minheight_count_general(k(kv), n, s, m);
                        o.eq(&general, &minheight_count(k(kv), n, s, m), || {
                            format!("dispatch {}", tag())
                        });
                        o.eq(
                            &general,
                            &minheight_count_via_difference(k(kv), n, s, m),
                            || format!("difference {}", tag()),
                        );
                        o.eq(&general, series.coeff(n), || format!("series {}", tag()));
                        o.eq(
                            &general,
                            &oracle_count(&q, &PathFilter::min_height(m)),
                            || format!("oracle {}", tag()),
                        );
                        let listed = enumerate(&q, &PathFilter::min_height(m)).unwrap().count();
                        o.eq(&general, &ExactInt::from(listed), || {
                            format!("enumeration {}", tag())
                        });
                        if let Some(v) = minheight_count_small_excess(k(kv), n, s, m) {
                            o.eq(&general, &v, || format!("small excess {}", tag()));
                        }
                        if kv == 2 {
                            o.eq(&general, &minheight_count_k2(n, s, m), || {
                                format!("k2 {}", tag())
                            });
                        }
                        total += general;
                    }
                    o.eq(&total, &count_closed(&q), || format!("partition {q}"));
                }
            }
        }
    }
    o
}

fn returns() -> Outcome {
    let mut o = Outcome::new();
    for kv in 2..=3 {
        for a in 0..=4usize {
            for b in 0..=4usize {
                let s = Shape::new(a, b);
                for n in 0..=6 {
                    let q = PathClassQuery::new(k(kv), n, s);
                    let mut total = ExactInt::from(0);
                    for rho in 0..=n {
                        let tag = || format!("{q} rho={rho}");
                        let v = returns_count(k(kv), n, s, rho);
                        o.eq(&v, returns_series(k(kv), s, rho, n).coeff(n), || {
                            format!("series {}", tag())
                        });
                        o.eq(&v, &oracle_count(&q, &PathFilter::returns(rho)), || {
                            format!("oracle {}", tag())
                        });
                        let listed = enumerate(&q, &PathFilter::returns(rho)).unwrap().count();
                        o.eq(&v, &ExactInt::from(listed), || {
                            format!("enumeration {}", tag())
                        });
                        if a == 0 {
                            o.eq(&v, &returns_count_grounded(k(kv), n, b, rho), || {
                                format!("grounded {}", tag())
                            });
                        } else if rho == 0 {
                            o.eq(&v, &returns_count_none(k(kv), n, s), || {
                                format!("none {}", tag())
                            });
                        } else {
                            o.eq(&v, &returns_count_general(k(kv), n, s, rho), || {
                                format!("general {}", tag())
                            });
                        }
                        if let Some(x) = returns_count_small_alpha(k(kv), n, s, rho) {
                            o.eq(&v, &x, || format!("small alpha {}", tag()));
                        }
                        if kv == 2 {
                            if let Some(x) = returns_count_k2(n, s, rho) {
                                o.eq(&v, &x, || format!("k2 {}", tag()));
                            }
                            if rho == 0 && a > 0 {
                                o.eq(&v, &returns_count_k2_none(n, s), || {
                                    format!("k2 none {}", tag())
                                });
                            }
                        }
                        total += v;
                    }
                    o.eq(&total, &count_closed(&q), || format!("partition {q}"));
                }
            }
        }
    }
    o
}

fn bounded_height() -> Outcome {
    let mut o = Outcome::new();
    for kv in 2..=3 {
        for m in 0..=5usize {
            for a in 0..=m {
                for b in 0..=m {
                    let s = Shape::new(a, b);
                    let series = bounded_series(k(kv), s, m, 8);
                    for n in 0..=8 {
                        let q = PathClassQuery::new(k(kv), n, s);
                        let dp = oracle_count(&q, &PathFilter::ceiling(m));
                        o.eq(series.coeff(n), &dp, || format!("{q} M={m}"));
                        o.eq(&bounded_count(&BoundedQuery::new(q, m)), &dp, || {
                            format!("count {q} M={m}")
                        });
                    }
                }
            }
        }
        for a in 0..=5usize {
            for b in 0..=5usize {
                for n in 0..=8 {
                    let q = PathClassQuery::new(k(kv), n, Shape::new(a, b));
                    let top = k(kv).drop() * n + b;
                    let mut total = ExactInt::from(0);
                    for m in a.max(b)..=top.max(a) {
                        let h = max_height_count(&BoundedQuery::new(q, m));
                        o.eq(&h, &oracle_count(&q, &PathFilter::max_height(m)), || {
                            format!("max height {q} M={m}")
                        });
                        total += h;
                    }
                    o.eq(&total, &count_closed(&q), || {
                        format!("max height partition {q}")
                    });
                }
            }
        }
    }
    for kv in 2..=5u32 {
        for m in 0..(kv as usize - 1) {
            for a in 0..=m {
                for b in 0..=m {
                    let s = bounded_series(k(kv), Shape::new(a, b), m, 8);
                    let expect = if a <= b {
                        TruncatedSeries::one(8)
                    } else {
                        TruncatedSeries::zero(8)
                    };
                    o.check(s == expect, || {
                        format!("degenerate k={kv} M={m} ({a},{b}): {s}")
                    });
                }
            }
        }
    }
    o
}

fn raney_identity() -> Outcome {
    let mut o = Outcome::new();
    for kv in 2..=4 {
        let c = catalan_series(k(kv), 12);
        for r in 0..=8u64 {
            let p = c.pow(r);
            for n in 0..=12u64 {
                o.eq(p.coeff(n as usize), &raney(k(kv), r, n), || {
                    format!("k={kv} r={r} n={n}")
                });
            }
        }
    }
    o
}

fn appendix() -> Outcome {
    let mut o = Outcome::new();
    let snap = Snapshot::bundled();
    let cfg = MatchConfig::default();
    let named = [
        (TableId::K2, 0, 0, "A000108"),
        (TableId::K3, 0, 1, "A006013"),
        (TableId::K4, 0, 0, "A002293"),
        (TableId::Bounded, 3, 0, "A001519"),
    ];
    for table in TableId::all() {
        let t = regenerate_table(table, 16, &snap, &cfg, 0).unwrap();
        for cell in &t.cells {
            let d = &cell.def;
            let at = || {
                let coords = match d.ceiling {
                    Some(m) => format!("k={} M={m}", d.k),
                    None => format!("alpha={} beta={}", d.shape.alpha, d.shape.beta),
                };
                format!("table {} {coords} {}", table.number(), d.entry.label())
            };
            match &cell.outcome {
                CellOutcome::NoAssertion => {}
                CellOutcome::Unavailable(_) => {
                    o.check(false, || format!("{}: not in snapshot", at()))
                }
                CellOutcome::Compared { report, .. } | CellOutcome::Literal { report, .. } => {
                    let ok =
                        report.matched && report.shift.abs() <= 5 && report.overlap_length >= 10;
                    o.check(ok, || {
                        format!("{}: no match, generated {:?}", at(), short(&cell.generated))
                    });
                }
            }
        }
        for (tt, row, col, id) in named {
            if tt != table {
                continue;
            }
            let cell = t.cell(row, col).unwrap();
            let ok = matches!(&cell.def.entry, CellEntry::Oeis(x) if x.as_str() == id)
                && cell
                    .outcome
                    .report()
                    .is_some_and(|r| r.matched && r.overlap_length >= 10);
            o.check(ok, || format!("named cell {id} did not match"));
        }
        if table == TableId::Bounded {
            // literal cells, including the plain `1` meaning 1,0,0,...
            let unit = &t.cell(0, 0).unwrap().generated;
            let mut expect = vec![ExactInt::from(0); 16];
            expect[0] = ExactInt::from(1);
            o.check(unit == &expect, || {
                format!("plain 1 cell generated {:?}", short(unit))
            });
            for (row, col, label) in [
                (1, 0, "{1}"),
                (2, 0, "{2^n}"),
                (4, 1, "{3^n}"),
                (6, 2, "{4^n}"),
            ] {
                let c = t.cell(row, col).unwrap();
                let ok =
                    c.def.entry.label() == label && c.outcome.report().is_some_and(|r| r.matched);
                o.check(ok, || format!("literal {label} at M={row} k={}", col + 2));
            }
        }
    }
    o
}

fn short(v: &[ExactInt]) -> Vec<String> {
    v.iter().take(10).map(|x| x.to_string()).collect()
}

fn functional_equation() -> Outcome {
    let mut o = Outcome::new();
    for kv in 2..=5u32 {
        let c = catalan_series(k(kv), 40);
        let rhs =
            &(&TruncatedSeries::monomial(1, 40) * &c.pow(kv as u64)) + &TruncatedSeries::one(40);
        o.check(c == rhs, || format!("k={kv}"));
    }
    o
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome, Option<u64>);
    let criteria: [Criterion; 8] = [
        (
            1,
            "shape counts: closed == recurrence == series == enumeration",
            formula_agreement,
            Some(60),
        ),
        (
            2,
            "k=2 closed forms and reflection",
            k2_specializations,
            None,
        ),
        (
            3,
            "minimum height routes, oracle and partition",
            min_height,
            Some(30),
        ),
        (4, "returns routes, oracle and partition", returns, None),
        (
            5,
            "bounded height vs capped DP, degenerate ceilings, max-height partition",
            bounded_height,
            Some(30),
        ),
        (
            6,
            "Raney numbers vs powers of the k-Catalan series",
            raney_identity,
            None,
        ),
        (
            7,
            "catalogue tables from the bundled snapshot",
            appendix,
            Some(60),
        ),
        (8, "C = t C^k + 1 mod t^41", functional_equation, None),
    ];
    let mut all = true;
    for (id, title, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        all &= report(id, title, out, start.elapsed(), budget);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
