use std::path::PathBuf;

use finalg_core::{
    all_congruences, classify_identity, clone_ternary_terms, congruence_generated,
    enumerate_factorizations, evaluate, find_malcev_operations, fixtures, greatest_factorization,
    group_axioms, group_malcev, holds, is_homomorphism, kernel, least_factorization_detailed,
    malcev::is_malcev_table, malcev_term_witness, parse_term, precedes, principal_translations,
    product, quotient, subalgebra_generated, translation_semigroup, AlgebraDocument, CarrierMap,
    Check, Error, FiniteAlgebra, Identity, Partition, Translation,
};
use serde_json::{json, Value};

use crate::parse;
use crate::report::{
    assignment_human, assignment_json, elements_human, verdict_str, CliError, Outcome, Status,
};
use crate::workspace::Workspace;

type Res = Result<Outcome, CliError>;

fn doc(alg: &FiniteAlgebra) -> Value {
    serde_json::to_value(AlgebraDocument::from_algebra(alg)).expect("documents serialize")
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn pass_fail(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn check_identity(ws: &mut Workspace, algebra: &str, lhs: &str, rhs: &str) -> Res {
    let x = ws.algebra(algebra)?;
    let p = parse_term(lhs, x.signature())?;
    let q = parse_term(rhs, x.signature())?;
    let class = classify_identity(&p, &q);
    let check = holds(&x, &p, &q)?;
    let passed = check.passed();
    let mut human = format!("{}  {p} = {q}  [{class:?}]", pass_fail(passed));
    if let Some(a) = check.counterexample() {
        human.push_str(&format!("\ncounterexample: {}", assignment_human(&x, a)));
    }
    let body = json!({
        "algebra": algebra,
        "identity": format!("{p} = {q}"),
        "class": class,
        "verdict": verdict_str(passed),
        "counterexample": check.counterexample().map(assignment_json),
    });
    Ok(Outcome::new(Status::verdict(passed), body, human))
}

pub fn variety_check(
    ws: &mut Workspace,
    algebra: &str,
    texts: &[String],
    file: Option<&PathBuf>,
    with_group_axioms: bool,
) -> Res {
    let x = ws.algebra(algebra)?;
    let mut ids: Vec<Identity> = Vec::new();
    if with_group_axioms {
        ids.extend(group_axioms());
    }
    if let Some(path) = file {
        ids.extend(ws.identity_file(path, x.signature())?);
    }
    for t in texts {
        ids.push(Identity::parse(t, x.signature())?);
    }
    if ids.is_empty() {
        return Err(CliError::Usage("no identities given".into()));
    }
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for id in &ids {
        let check = holds(&x, &id.lhs, &id.rhs)?;
        all &= check.passed();
        let mut line = format!("{}  {id}  [{:?}]", pass_fail(check.passed()), id.class());
        if let Some(a) = check.counterexample() {
            line.push_str(&format!("  at {}", assignment_human(&x, a)));
        }
        lines.push(line);
        rows.push(json!({
            "identity": id.to_string(),
            "class": id.class(),
            "verdict": verdict_str(check.passed()),
            "counterexample": check.counterexample().map(assignment_json),
        }));
    }
    lines.push(format!("{}  {} identities", pass_fail(all), ids.len()));
    let body = json!({
        "algebra": algebra,
        "verdict": verdict_str(all),
        "identities": rows,
    });
    Ok(Outcome::new(Status::verdict(all), body, lines.join("\n")))
}

pub fn eval(ws: &mut Workspace, algebra: &str, term: &str, assign: Option<&str>) -> Res {
    let x = ws.algebra(algebra)?;
    let t = parse_term(term, x.signature())?;
    let a = parse::assignment(&x, assign.unwrap_or(""))?;
    let value = evaluate(&t, &x, &a)?;
    let body = json!({
        "algebra": algebra,
        "term": t.to_string(),
        "assignment": assignment_json(&a),
        "value": value,
    });
    Ok(Outcome::new(Status::Pass, body, x.label(value)))
}

pub fn hom_check(ws: &mut Workspace, source: &str, target: &str, map: &str) -> Res {
    let x = ws.algebra(source)?;
    let y = ws.algebra(target)?;
    let phi = CarrierMap::new(y.size(), parse::map_values(map)?)?;
    let check = is_homomorphism(&phi, &x, &y)?;
    let passed = check.passed();
    let mut human = pass_fail(passed).to_string();
    if let Some(v) = check.counterexample() {
        human.push_str(&format!(
            "  fails at {}({})",
            v.symbol,
            v.args
                .iter()
                .map(|&a| x.label(a))
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    let body = json!({
        "source": source,
        "target": target,
        "map": phi.values(),
        "verdict": verdict_str(passed),
        "counterexample": check.counterexample(),
    });
    Ok(Outcome::new(Status::verdict(passed), body, human))
}

pub fn subalgebra(ws: &mut Workspace, algebra: &str, seed: &str) -> Res {
    let x = ws.algebra(algebra)?;
    let seed = parse::elements(&x, seed)?;
    let sub = subalgebra_generated(&x, &seed)?;
    let mut human = format!(
        "{} ({} elements)",
        elements_human(&x, &sub.elements),
        sub.elements.len()
    );
    if let Some(s) = &sub.algebra {
        human.push('\n');
        human.push_str(&compact(&doc(s)));
    }
    let body = json!({
        "algebra": algebra,
        "seed": seed,
        "elements": sub.elements,
        "size": sub.elements.len(),
        "subalgebra": sub.algebra.as_ref().map(doc),
    });
    Ok(Outcome::new(Status::Pass, body, human))
}

pub fn product_cmd(ws: &mut Workspace, names: &[String]) -> Res {
    let factors = names
        .iter()
        .map(|n| ws.algebra(n))
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&FiniteAlgebra> = factors.iter().collect();
    let p = product(factors[0].signature(), &refs, &ws.caps)?;
    let d = doc(&p.algebra);
    let human = format!("size {}\n{}", p.algebra.size(), compact(&d));
    let body = json!({
        "factors": names,
        "size": p.algebra.size(),
        "projections": p.projections.iter().map(|m| m.values()).collect::<Vec<_>>(),
        "product": d,
    });
    Ok(Outcome::new(Status::Pass, body, human))
}

pub fn quotient_cmd(ws: &mut Workspace, algebra: &str, partition: &str) -> Res {
    let x = ws.algebra(algebra)?;
    let pi = Partition::parse_sized(partition, x.size())?;
    match quotient(&x, &pi) {
        Ok(q) => {
            let d = doc(&q.algebra);
            let human = format!("PASS  {pi} is a congruence\nmap {}\n{}", q.map, compact(&d));
            let body = json!({
                "algebra": algebra,
                "partition": pi.to_string(),
                "verdict": "pass",
                "map": q.map.values(),
                "size": q.algebra.size(),
                "quotient": d,
            });
            Ok(Outcome::new(Status::Pass, body, human))
        }
        Err(Error::NotACongruence(v)) => {
            let human = format!("FAIL  {pi} is not a congruence: {v}");
            let body = json!({
                "algebra": algebra,
                "partition": pi.to_string(),
                "verdict": "fail",
                "counterexample": v,
            });
            Ok(Outcome::new(Status::Fail, body, human))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn congruences(ws: &mut Workspace, algebra: &str) -> Res {
    let x = ws.algebra(algebra)?;
    let cons = all_congruences(&x, &ws.caps)?;
    let listed: Vec<String> = cons.iter().map(Partition::to_string).collect();
    let mut human = format!("{} congruences", cons.len());
    for c in &listed {
        human.push('\n');
        human.push_str(c);
    }
    let body = json!({
        "algebra": algebra,
        "count": cons.len(),
        "congruences": listed,
    });
    Ok(Outcome::new(Status::Pass, body, human))
}

pub fn gen_congruence(ws: &mut Workspace, algebra: &str, pairs: &str) -> Res {
    let x = ws.algebra(algebra)?;
    let pairs = parse::pairs(&x, pairs)?;
    let theta = congruence_generated(&x, &pairs)?;
    let body = json!({
        "algebra": algebra,
        "pairs": pairs,
        "congruence": theta.to_string(),
        "blocks": theta.num_blocks(),
    });
    Ok(Outcome::new(Status::Pass, body, theta.to_string()))
}

fn word(t: &Translation) -> String {
    if t.word.is_empty() {
        return "e".into();
    }
    t.word
        .iter()
        .rev()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("∘")
}

pub fn translations(ws: &mut Workspace, algebra: &str, principal_only: bool) -> Res {
    let x = ws.algebra(algebra)?;
    let s1 = principal_translations(&x);
    let listed = if principal_only {
        s1.clone()
    } else {
        translation_semigroup(&x, ws.caps.max_semigroup)?
    };
    let mut human = format!("|S₁| = {}", s1.len());
    if !principal_only {
        human.push_str(&format!(", |S| = {}", listed.len()));
    }
    for t in &listed {
        human.push('\n');
        human.push_str(&t.to_string());
    }
    let rows: Vec<Value> = listed
        .iter()
        .map(|t| json!({ "word": word(t), "table": t.table }))
        .collect();
    let body = json!({
        "algebra": algebra,
        "principal_count": s1.len(),
        "semigroup_size": if principal_only { Value::Null } else { listed.len().into() },
        "translations": rows,
    });
    Ok(Outcome::new(Status::Pass, body, human))
}

pub fn malcev(ws: &mut Workspace, target: &str, max_operations: usize) -> Res {
    if let Ok(k) = target.parse::<usize>() {
        let search = find_malcev_operations(k, max_operations)?;
        let status = if search.complete {
            Status::Pass
        } else {
            Status::CapExceeded
        };
        let mut human = format!(
            "{}{} Mal'cev operations on {k} elements",
            search.operations.len(),
            if search.complete { "" } else { "+" }
        );
        if search.operations.len() <= 32 {
            for op in &search.operations {
                human.push('\n');
                human.push_str(&format!("{op:?}"));
            }
        }
        let body = json!({
            "size": k,
            "count": search.operations.len(),
            "complete": search.complete,
            "operations": search.operations,
        });
        return Ok(Outcome::new(status, body, human));
    }
    let x = ws.algebra(target)?;
    let witness = malcev_term_witness(&x, ws.caps.max_clone)?;
    let group = match group_malcev(&x) {
        Ok(table) => Some(table),
        Err(Error::NotAGroup(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut human = format!(
        "{}  Mal'cev term {}",
        pass_fail(witness.is_some()),
        if witness.is_some() { "found" } else { "absent" }
    );
    if let Some(w) = &witness {
        human.push_str(&format!("\nwitness {w:?}"));
    }
    if let Some(g) = &group {
        human.push_str(&format!(
            "\ngroup operation x·y⁻¹·z is Mal'cev: {}",
            is_malcev_table(x.size(), g)
        ));
    }
    let body = json!({
        "algebra": target,
        "has_malcev_term": witness.is_some(),
        "witness": witness,
        "group_malcev": group.as_ref().map(|g| json!({
            "table": g,
            "is_malcev": is_malcev_table(x.size(), g),
        })),
    });
    Ok(Outcome::new(
        Status::verdict(witness.is_some()),
        body,
        human,
    ))
}

pub fn clone_cmd(ws: &mut Workspace, algebra: &str, list: bool) -> Res {
    let x = ws.algebra(algebra)?;
    let ops = clone_ternary_terms(&x, ws.caps.max_clone)?;
    let malcev = ops.iter().filter(|f| is_malcev_table(x.size(), f)).count();
    let mut human = format!("{} ternary term operations, {malcev} Mal'cev", ops.len());
    if list {
        for op in &ops {
            human.push('\n');
            human.push_str(&format!("{op:?}"));
        }
    }
    let body = json!({
        "algebra": algebra,
        "count": ops.len(),
        "malcev_count": malcev,
        "operations": if list { json!(ops) } else { Value::Null },
    });
    Ok(Outcome::new(Status::Pass, body, human))
}

pub fn factorize(ws: &mut Workspace, algebra: &str, map: &str, oracle: bool) -> Res {
    let x = ws.algebra(algebra)?;
    let values = parse::map_values(map)?;
    let f = CarrierMap::from_values(values);
    let least = least_factorization_detailed(&x, &f, &ws.caps)?;
    let fac = &least.factorization;
    let ker = fac.kernel();
    let d = doc(&fac.y);
    let mut human = format!(
        "kernel {ker}\n|Y| = {}\n|S| = {}\ng = {}\nh = {}\n{}",
        fac.y.size(),
        least.semigroup.len(),
        fac.g,
        fac.h,
        compact(&d)
    );
    let mut body = json!({
        "algebra": algebra,
        "map": f.values(),
        "kernel": ker.to_string(),
        "size": fac.y.size(),
        "semigroup_size": least.semigroup.len(),
        "g": fac.g.values(),
        "h": fac.h.values(),
        "y": d,
        "embedding": least.embedding,
    });
    let mut status = Status::Pass;
    if oracle {
        let all = enumerate_factorizations(&x, &f, &ws.caps)?;
        let greatest = greatest_factorization(&x, &f);
        let kernels: Vec<Partition> = all.iter().map(|c| c.kernel()).collect();
        let mut order = Vec::new();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                if precedes(a, b)?.is_some() {
                    order.push((i, j));
                }
            }
        }
        let mut least_first = true;
        let mut greatest_last = true;
        for c in &all {
            least_first &= precedes(fac, c)?.is_some();
            greatest_last &= precedes(c, &greatest)?.is_some();
        }
        // the enumerated kernel every other one refines
        let top = kernels
            .iter()
            .find(|k| kernels.iter().all(|o| o.refines(k)))
            .cloned();
        let agrees = top.as_ref() == Some(&ker) && ker.refines(&kernel(&f));
        let ok = least_first && greatest_last && agrees;
        status = Status::verdict(ok);
        human.push_str(&format!(
            "\noracle: {} factorizations, least precedes all: {least_first}, greatest dominates all: {greatest_last}, kernel agrees: {agrees}\n{}",
            all.len(),
            pass_fail(ok)
        ));
        body["oracle"] = json!({
            "factorizations": kernels.iter().map(Partition::to_string).collect::<Vec<_>>(),
            "precedes": order,
            "least_precedes_all": least_first,
            "greatest_dominates_all": greatest_last,
            "brute_force_kernel": top.map(|k| k.to_string()),
            "kernel_agrees": agrees,
            "verdict": verdict_str(ok),
        });
    }
    Ok(Outcome::new(status, body, human))
}

pub fn fixtures_cmd(ws: &mut Workspace, dump: Option<&str>) -> Res {
    if let Some(name) = dump {
        let x = ws.algebra(name)?;
        let d = doc(&x);
        let human = compact(&d);
        return Ok(Outcome::new(
            Status::Pass,
            json!({ "name": name, "algebra": d }),
            human,
        ));
    }
    let mut rows = Vec::new();
    let mut lines =
        vec!["name    size  signature      group  congruences  |S1|  |S|  malcev".to_string()];
    for &name in fixtures::NAMES {
        let x = ws.algebra(name)?;
        let group = matches!(
            finalg_core::in_equational_class(&x, &group_axioms()),
            Ok(Check::Pass)
        );
        let cons = all_congruences(&x, &ws.caps)?.len();
        let s1 = principal_translations(&x).len();
        let s = translation_semigroup(&x, ws.caps.max_semigroup)?.len();
        let malcev = malcev_term_witness(&x, ws.caps.max_clone)?.is_some();
        lines.push(format!(
            "{name:<7} {:>4}  {:<13}  {:<5}  {cons:>11}  {s1:>4}  {s:>3}  {malcev}",
            x.size(),
            x.signature().to_string(),
            group
        ));
        rows.push(json!({
            "name": name,
            "size": x.size(),
            "signature": x.signature().to_string(),
            "group": group,
            "congruences": cons,
            "principal_translations": s1,
            "semigroup_size": s,
            "has_malcev_term": malcev,
        }));
    }
    Ok(Outcome::new(
        Status::Pass,
        json!({ "fixtures": rows }),
        lines.join("\n"),
    ))
}
