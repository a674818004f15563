//! Acceptance gate: runs every criterion on the default catalog and prints
//! one PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use etalab_core::charops::decompose_product;
use etalab_core::chartab::{
    admissible_primes, character_table, character_table_with_prime, CharTable,
};
use etalab_core::constructions::{extraspecial_exp_p, prop5_witness};
use etalab_core::verify::{
    default_catalog, verify_corollary_a, verify_ledger, verify_theorem_a, verify_theorem_b,
    VerificationReport, VerifyOptions,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn report_outcome(report: VerificationReport) -> Outcome {
    let summary = format!(
        "{} groups, {} records",
        report.results.len(),
        report.record_count()
    );
    if report.pass {
        Ok(summary)
    } else {
        let (g, r) = report.failures().next().unwrap();
        Err(format!(
            "{summary}; first failure in {} at chi {}: {:?}",
            g.group,
            r.chi,
            r.counterexample.as_ref().map(|c| &c.detail)
        ))
    }
}

fn opts() -> VerifyOptions {
    VerifyOptions {
        timing: false,
        ..VerifyOptions::default()
    }
}

fn catalog_tables() -> Vec<(String, CharTable)> {
    default_catalog()
        .iter()
        .map(|e| {
            let g = e.build().expect("catalog group");
            (e.name.clone(), character_table(&g).expect("table"))
        })
        .collect()
}

fn theorem_a() -> Outcome {
    report_outcome(verify_theorem_a(&default_catalog(), &opts()).map_err(|e| e.to_string())?)
}

fn theorem_b() -> Outcome {
    let report = verify_theorem_b(&default_catalog(), &opts()).map_err(|e| e.to_string())?;
    let degree_p = report
        .results
        .iter()
        .flat_map(|g| &g.records)
        .filter(|r| r.n == Some(1))
        .count();
    if degree_p == 0 {
        return Err("no degree-p characters in the catalog".into());
    }
    report_outcome(report).map(|s| format!("{s}, {degree_p} of degree p"))
}

fn witnesses() -> Outcome {
    let mut seen = Vec::new();
    for (p, n, want_eta, want_degree) in [(2u64, 1u32, 3usize, 2u64), (2, 2, 5, 4), (3, 1, 5, 3)] {
        let w = prop5_witness(p, n).map_err(|e| e.to_string())?;
        let t = character_table(&w.group).map_err(|e| e.to_string())?;
        let chi = t.index_of(&w.chi).ok_or("witness character not in table")?;
        let d = decompose_product(&t, chi, t.conjugate_index(chi)).map_err(|e| e.to_string())?;
        let degree = t[chi].degree().unwrap_or(0);
        let real = t.conjugate_index(chi) == chi;
        if d.eta != want_eta || degree != want_degree || real {
            return Err(format!(
                "({p},{n}): eta {} degree {degree} real {real}, expected eta {want_eta} degree {want_degree}",
                d.eta
            ));
        }
        seen.push(format!("({p},{n}) eta {}", d.eta));
    }
    Ok(seen.join(", "))
}

fn ledger() -> Outcome {
    report_outcome(verify_ledger(&default_catalog(), &opts()).map_err(|e| e.to_string())?)
}

fn corollary() -> Outcome {
    report_outcome(verify_corollary_a(&default_catalog(), &opts()).map_err(|e| e.to_string())?)
}

fn extraspecial_non_example() -> Outcome {
    let g = extraspecial_exp_p(3, 1).map_err(|e| e.to_string())?;
    if g.order() != 27 || g.exponent() != 3 {
        return Err("wrong extraspecial group".into());
    }
    let t = character_table(&g).map_err(|e| e.to_string())?;
    let cubic: Vec<usize> = (0..t.len()).filter(|&i| t[i].degree() == Some(3)).collect();
    let mut pairs = 0;
    for &i in &cubic {
        for &j in &cubic {
            if j == t.conjugate_index(i) {
                continue;
            }
            let eta = decompose_product(&t, i, j).map_err(|e| e.to_string())?.eta;
            if eta != 1 {
                return Err(format!("eta(X.{i}, X.{j}) = {eta}"));
            }
            pairs += 1;
        }
    }
    if pairs == 0 {
        return Err("no pair of degree-3 characters with psi != conj(chi)".into());
    }
    Ok(format!("{pairs} ordered pairs with eta 1"))
}

fn table_validity(tables: &[(String, CharTable)]) -> Outcome {
    for (name, t) in tables {
        let g = t.group();
        if common::degree_sum_of_squares(t) != g.order() as u64 {
            return Err(format!("{name}: squared degrees do not sum to |G|"));
        }
        common::rows_orthonormal(t).map_err(|e| format!("{name}: {e}"))?;
        common::columns_orthogonal(t).map_err(|e| format!("{name}: {e}"))?;
        let next = admissible_primes(g.order() as u64, g.exponent())
            .nth(1)
            .expect("second admissible prime");
        let again = character_table_with_prime(g, next).map_err(|e| e.to_string())?;
        if again.irreducibles() != t.irreducibles() {
            return Err(format!("{name}: table differs under prime {next}"));
        }
    }
    Ok(format!("{} tables", tables.len()))
}

fn oracle_equivalence(tables: &[(String, CharTable)]) -> Outcome {
    let mut checked = 0;
    for (name, t) in tables.iter().filter(|(_, t)| t.group().order() <= 256) {
        for i in 0..t.len() {
            let j = t.conjugate_index(i);
            let fast = decompose_product(t, i, j).map_err(|e| e.to_string())?.eta;
            let slow = common::elementwise_eta(t, i, j);
            if fast != slow {
                return Err(format!(
                    "{name} X.{i}: table eta {fast}, elementwise {slow}"
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} characters"))
}

fn main() {
    let tables = catalog_tables();
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "eta(chi, conj chi) >= 2n(p-1)+1 over the catalog",
            Box::new(theorem_a),
        ),
        (
            "degree-p trichotomy and constituent pattern",
            Box::new(theorem_b),
        ),
        (
            "witness equalities for (2,1), (2,2), (3,1)",
            Box::new(witnesses),
        ),
        (
            "chain ledger identity and unstable case split",
            Box::new(ledger),
        ),
        (
            "pairwise bound with a linear constituent, order <= 64",
            Box::new(corollary),
        ),
        (
            "extraspecial 27: eta(chi, psi) = 1 for psi != conj chi",
            Box::new(extraspecial_non_example),
        ),
        (
            "table validity and prime independence",
            Box::new(|| table_validity(&tables)),
        ),
        (
            "table eta equals elementwise eta, order <= 256",
            Box::new(|| oracle_equivalence(&tables)),
        ),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {ms} ms)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail}; {ms} ms)", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
