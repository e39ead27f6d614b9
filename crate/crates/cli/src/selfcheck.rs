//! Built-in golden corpus, run by `matgrowth selfcheck`.

use std::collections::BTreeSet;

use crate::{run_config, ProblemConfig, ResultDocument, RunOutcome};

type Expectation = fn(&RunOutcome) -> Result<(), String>;

pub struct GoldenCase {
    pub name: &'static str,
    pub config: &'static str,
    expect: Expectation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn doc(o: &RunOutcome) -> Result<&ResultDocument, String> {
    o.document.as_ref().ok_or_else(|| format!("no document: {:?}", o.message))
}

fn exit(o: &RunOutcome, code: i32) -> Result<(), String> {
    if o.exit_code == code {
        Ok(())
    } else {
        Err(format!("exit {} instead of {code}: {:?}", o.exit_code, o.message))
    }
}

fn display(o: &RunOutcome, name: &str, want: &str) -> Result<(), String> {
    exit(o, 0)?;
    let p = doc(o)?
        .polynomial(name)
        .ok_or_else(|| format!("no polynomial {name}"))?;
    if p.display == want {
        Ok(())
    } else {
        Err(format!("{name} = {} instead of {want}", p.display))
    }
}

fn rank(o: &RunOutcome, key: &str, want: &str) -> Result<(), String> {
    exit(o, 0)?;
    match doc(o)?.ranks.get(key) {
        Some(v) if v == want => Ok(()),
        other => Err(format!("{key} = {other:?} instead of {want}")),
    }
}

/// `|tB|` for `B ⊂ ℤ`, by repeated set addition.
fn sumset_sizes(b: &[i64], upto: u32) -> Vec<usize> {
    let mut cur: BTreeSet<i64> = BTreeSet::from([0]);
    let mut out = vec![1];
    for _ in 0..upto {
        cur = cur.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
        out.push(cur.len());
    }
    out
}

pub fn corpus() -> Vec<GoldenCase> {
    vec![
        GoldenCase {
            name: "two equal translations, one part: phi-rank 0",
            config: r#"{"backend":"trivial","operators":[1,1],"partition":[2],"A":[0],"mode":"phi-rank"}"#,
            expect: |o| rank(o, "phi", "0/1"),
        },
        GoldenCase {
            name: "two equal translations, two parts: phi-rank 1",
            config: r#"{"backend":"trivial","operators":[1,1],"partition":[1,1],"A":[0],"mode":"phi-rank"}"#,
            expect: |o| rank(o, "phi", "1/1"),
        },
        GoldenCase {
            name: "sumset {0,1}",
            config: r#"{"backend":"trivial","operators":[0,1],"A":[0],"mode":"sumset"}"#,
            expect: |o| {
                display(o, "P", "Y + 1")?;
                let t = &doc(o)?.polynomials[0].threshold;
                if t == &[0] {
                    Ok(())
                } else {
                    Err(format!("threshold {t:?}"))
                }
            },
        },
        GoldenCase {
            name: "sumset {0,1,3} against enumeration",
            config: r#"{"backend":"trivial","operators":[0,1,3],"A":[0],"mode":"sumset"}"#,
            expect: |o| {
                exit(o, 0)?;
                let p = &doc(o)?.polynomials[0];
                let t0 = p.threshold[0];
                let sizes = sumset_sizes(&[0, 1, 3], t0 + 6);
                for t in t0..=t0 + 6 {
                    let v = p.eval(&[t]).map_err(|e| e.to_string())?;
                    if v != num::BigRational::from_integer(sizes[t as usize].into()) {
                        return Err(format!("P({t}) = {v}, |tB| = {}", sizes[t as usize]));
                    }
                }
                Ok(())
            },
        },
        GoldenCase {
            name: "sumset grid in Z^2",
            config: r#"{"backend":"trivial","operators":[[0,0],[1,0],[0,0],[0,1]],"partition":[2,2],"A":[[0,0]],"mode":"sumset"}"#,
            expect: |o| display(o, "P", "Y1*Y2 + Y1 + Y2 + 1"),
        },
        GoldenCase {
            name: "oscillating graph, graded ranks",
            config: r#"{"backend":"graphic","backend_data":{"builtin":"counterexample"},"mode":"dimension"}"#,
            expect: |o| {
                exit(o, 3)?;
                let e = doc(o)?.error.clone().unwrap_or_default();
                if e.contains("triangular") {
                    Ok(())
                } else {
                    Err(format!("error does not name the hypothesis: {e}"))
                }
            },
        },
        GoldenCase {
            name: "oscillating graph, cumulative ranks",
            config: r#"{"backend":"graphic","backend_data":{"builtin":"counterexample"},"mode":"cumulative"}"#,
            expect: |o| display(o, "Q", "2*Y + 2"),
        },
        GoldenCase {
            name: "oscillating graph is quasi-triangular, not triangular",
            config: r#"{"backend":"graphic","backend_data":{"builtin":"counterexample"},"flags":["quasi-triangular"],"mode":"check"}"#,
            expect: |o| {
                exit(o, 0)?;
                let c = doc(o)?.check.as_ref().ok_or("no check report")?;
                match c.parts.as_slice() {
                    [p] if !p.triangular && p.quasi_triangular => Ok(()),
                    other => Err(format!("{other:?}")),
                }
            },
        },
        GoldenCase {
            name: "ideal N^2",
            config: r#"{"backend":"ideal-count","partition":[2],"mode":"ideal-count"}"#,
            expect: |o| {
                display(o, "H", "Y + 1")?;
                display(o, "H*", "1/2*Y^2 + 3/2*Y + 1")
            },
        },
        GoldenCase {
            name: "ideal u1 <= 1",
            config: r#"{"backend":"ideal-count","backend_data":{"complement":[[2,0]]},"mode":"ideal-count"}"#,
            expect: |o| {
                display(o, "H", "2")?;
                display(o, "H*", "2*Y + 1")
            },
        },
        GoldenCase {
            name: "K[x,y]",
            config: r#"{"backend":"linear","backend_data":{"vars":2},"mode":"dimension"}"#,
            expect: |o| display(o, "P", "Y + 1"),
        },
        GoldenCase {
            name: "K[x1,x2,x3] is C(t+2,2)",
            config: r#"{"backend":"linear","backend_data":{"vars":3},"mode":"dimension"}"#,
            expect: |o| display(o, "P", "1/2*Y^2 + 3/2*Y + 1"),
        },
        GoldenCase {
            name: "K[x,y]/(x^2)",
            config: r#"{"backend":"linear","backend_data":{"vars":2,"relations":[{"monomial":[2,0]}]},"mode":"dimension"}"#,
            expect: |o| display(o, "P", "2"),
        },
        GoldenCase {
            name: "cycle under the identity: b0",
            config: r#"{"backend":"chain","backend_data":{"simplices":[[0,1],[1,2],[0,2]]},"operators":[{"shift":0}],"A":[[0,1],[1,2],[0,2]],"betti":{"n":0},"mode":"betti"}"#,
            expect: |o| display(o, "b0", "1"),
        },
        GoldenCase {
            name: "cycle under the identity: b1",
            config: r#"{"backend":"chain","backend_data":{"simplices":[[0,1],[1,2],[0,2]]},"operators":[{"shift":0}],"A":[[0,1],[1,2],[0,2]],"betti":{"n":1},"mode":"betti"}"#,
            expect: |o| display(o, "b1", "1"),
        },
        GoldenCase {
            name: "path, cumulative: b0",
            config: r#"{"backend":"chain","backend_data":{"periodic":{"base":[[0,1]],"period":1}},"operators":[{"shift":1}],"A":[[0,1]],"betti":{"n":0,"cumulative":true},"mode":"betti"}"#,
            expect: |o| display(o, "b0", "1"),
        },
        GoldenCase {
            name: "path, cumulative: b1",
            config: r#"{"backend":"chain","backend_data":{"periodic":{"base":[[0,1]],"period":1}},"operators":[{"shift":1}],"A":[[0,1]],"betti":{"n":1,"cumulative":true},"mode":"betti"}"#,
            expect: |o| display(o, "b1", "0"),
        },
        GoldenCase {
            name: "translated triangle copies, graded: b0",
            config: r#"{"backend":"chain","backend_data":{"periodic":{"base":[[0,1],[1,2],[0,2]],"period":3}},"operators":[{"shift":3}],"A":[[0,1],[1,2],[0,2]],"betti":{"n":0},"mode":"betti"}"#,
            expect: |o| display(o, "b0", "1"),
        },
        GoldenCase {
            name: "free circuit matroid",
            config: r#"{"backend":"circuit","backend_data":{"m":1,"width":3},"A":[{"degree":[0],"index":0},{"degree":[0],"index":1}],"mode":"dimension"}"#,
            expect: |o| display(o, "P", "2"),
        },
        GoldenCase {
            name: "U(2,3) in every degree",
            config: r#"{"backend":"circuit","backend_data":{"m":1,"width":3,"default_rule":{"uniform":2}},"A":[{"degree":[0],"index":0},{"degree":[0],"index":1},{"degree":[0],"index":2}],"mode":"dimension"}"#,
            expect: |o| display(o, "P", "2"),
        },
    ]
}

pub fn run_case(case: &GoldenCase) -> CaseResult {
    let outcome = match ProblemConfig::parse(case.config) {
        Ok(cfg) => run_config(&cfg),
        Err(e) => {
            return CaseResult {
                name: case.name,
                passed: false,
                detail: e.to_string(),
            }
        }
    };
    let verdict = (case.expect)(&outcome);
    CaseResult {
        name: case.name,
        passed: verdict.is_ok(),
        detail: verdict.err().unwrap_or_default(),
    }
}

pub fn selfcheck() -> Vec<CaseResult> {
    corpus().iter().map(run_case).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sumset_enumeration() {
        assert_eq!(sumset_sizes(&[0, 1], 3), vec![1, 2, 3, 4]);
        assert_eq!(sumset_sizes(&[0, 1, 3], 2), vec![1, 3, 6]);
    }

    #[test]
    fn every_golden_case_passes() {
        for r in selfcheck() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
