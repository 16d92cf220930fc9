use std::fmt::Write;
use std::path::Path;

use serde_json::{json, Value};

use preimage_core::constellation::{
    align, extract_monodromy_capped, fiber_product, normalization_genus, normalization_genus_tuple_oracle, Constellation,
};
use preimage_core::corpus::corpus_check;
use preimage_core::galois::{deck_group, is_galois, GaloisWitness};
use preimage_core::json::{
    constellation_to_json, constellations_from_document, document_field, fiber_component_to_json, growth_certificate_to_json, map_to_json,
    maps_from_document, moebius_from_json, moebius_list_from_json, orbit_from_json, orbit_to_json, point_from_json,
    point_to_json, portrait_to_json, rational_to_json, report_to_json, value_set_from_json, value_set_to_json, verdict_to_json,
};
use preimage_core::maps::{critical_structure, fiber_product_factor_count, Moebius, RationalMap, SpherePoint};
use preimage_core::orbifold::classify;
use preimage_core::orbits::{
    admissible_base, construct_sets, default_mu, finite_group_reduction, is_critical_point, orbit, shared_generators, verify_shared_preimage,
    verify_single_k, Reduction, ValueSet,
};
use preimage_core::scalar::NumberField;
use preimage_core::Error;

use crate::config::{Format, RunConfig};
use crate::{svg, Command, OrbitArgs, VerifyArgs};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::CapExceeded(_) | Error::PrecisionCap { .. } | Error::Undetermined(_) => 3,
            Error::NotGalois(_) | Error::DeckContainment(_) | Error::Consistency(_) => 1,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError { code: 2, message: message.into() }
}

/// Output of a command: text and JSON renderings, an optional plot, and
/// the exit status (0 success, 1 failed check).
pub struct Report {
    pub text: String,
    pub json: Value,
    pub svg: Option<String>,
    pub status: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, svg: None, status: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("JSON values serialize")),
            Format::Svg => match &self.svg {
                Some(s) => s.clone(),
                None => self.text.clone(),
            },
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("malformed JSON in {}: {e}", path.display())))
}

fn read_maps(path: &Path) -> Result<(NumberField, Vec<RationalMap>), CliError> {
    Ok(maps_from_document(&read_json(path)?)?)
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Classify { file } => classify_cmd(file),
        Command::Galois { file } => galois_cmd(file),
        Command::Deck { file } => deck_cmd(file),
        Command::Fiberprod { file } => fiberprod_cmd(file, cfg),
        Command::Normalize { file } => normalize_cmd(file, cfg),
        Command::Monodromy { file } => monodromy_cmd(file, cfg),
        Command::Orbit(args) => orbit_cmd(args, cfg),
        Command::Construct { maps, orbit } => construct_cmd(maps, orbit, cfg),
        Command::Verify(args) => verify_cmd(args, cfg),
        Command::ReduceFinite { maps } => reduce_cmd(maps, cfg),
        Command::CorpusCheck => corpus_cmd(),
    }
}

fn label(i: usize, n: usize) -> String {
    if n == 1 {
        String::new()
    } else {
        format!("map {}: ", i + 1)
    }
}

fn classify_cmd(file: &Path) -> Result<Report, CliError> {
    let (k, maps) = read_maps(file)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (i, p) in maps.iter().enumerate() {
        let v = classify(p)?;
        writeln!(text, "{}signature {}; chi = {}; verdict: {}", label(i, maps.len()), v.signature, v.chi, v.genus_bound).expect("string write");
        let mut j = verdict_to_json(&v);
        j["portrait"] = portrait_to_json(&k, &critical_structure(p)?);
        out.push(j);
    }
    Ok(Report::ok(text, json!(out)))
}

fn render_all(ms: &[Moebius]) -> String {
    ms.iter().map(|m| m.render("z")).collect::<Vec<_>>().join(", ")
}

fn galois_cmd(file: &Path) -> Result<Report, CliError> {
    let (k, maps) = read_maps(file)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (i, p) in maps.iter().enumerate() {
        let cert = is_galois(p)?;
        let prefix = label(i, maps.len());
        let j = match &cert.witness {
            GaloisWitness::Deck(g) => {
                let es = g.elements().unwrap_or_default();
                writeln!(text, "{prefix}galois: yes; deck group of order {}: {}", es.len(), render_all(es)).expect("string write");
                json!({"galois": true, "group": preimage_core::json::group_to_json(g)})
            }
            GaloisWitness::Deferred { hint } => {
                let h = hint.render("z");
                writeln!(text, "{prefix}galois: yes (uniform fibers); deck transformations need a root of {h}").expect("string write");
                json!({"galois": true, "adjoin_root_of": h})
            }
            GaloisWitness::NonUniform { value, local_degrees } => {
                writeln!(text, "{prefix}galois: no; fiber over {} has local degrees {local_degrees:?}", value.render(&k)).expect("string write");
                json!({"galois": false, "value": value.render(&k), "local_degrees": local_degrees})
            }
        };
        out.push(j);
    }
    Ok(Report::ok(text, json!(out)))
}

fn deck_cmd(file: &Path) -> Result<Report, CliError> {
    let (_, maps) = read_maps(file)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (i, p) in maps.iter().enumerate() {
        let g = deck_group(p)?;
        let es = g.elements().unwrap_or_default();
        writeln!(text, "{}order {}: {}", label(i, maps.len()), es.len(), render_all(es)).expect("string write");
        out.push(preimage_core::json::group_to_json(&g));
    }
    Ok(Report::ok(text, json!(out)))
}

/// Constellations from a file of maps (extracted jointly) or of
/// constellations, with the maps when given.
fn constellations(file: &Path, cfg: &RunConfig) -> Result<(Vec<Constellation>, Option<Vec<RationalMap>>), CliError> {
    let doc = read_json(file)?;
    if doc.get("constellations").is_some() || doc.get("perms").is_some() {
        return Ok((constellations_from_document(&doc)?, None));
    }
    let (_, maps) = maps_from_document(&doc)?;
    let run = extract_monodromy_capped(&maps, cfg.precision, cfg.precision_cap)?;
    Ok((run.constellations, Some(maps)))
}

fn fiberprod_cmd(file: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (cs, maps) = constellations(file, cfg)?;
    if cs.len() < 2 {
        return Err(input_error("a fiber product needs at least two coverings"));
    }
    let comps = fiber_product(&align(&cs)?)?;
    let mut text = format!("components: {}\n", comps.len());
    for (i, c) in comps.iter().enumerate() {
        writeln!(
            text,
            "component {}: degree {}, genus {}, degrees to factors {:?}",
            i + 1,
            c.induced.degree(),
            c.genus,
            c.degrees_to_factors
        )
        .expect("string write");
    }
    let mut j = json!({"components": comps.iter().map(fiber_component_to_json).collect::<Vec<_>>()});
    let mut status = 0;
    if let Some(maps) = maps.filter(|m| m.len() == 2) {
        let curve = fiber_product_factor_count(&maps[0], &maps[1])?;
        let agree = curve == comps.len();
        writeln!(text, "image curve factors: {curve} ({})", if agree { "agrees" } else { "DISAGREES" }).expect("string write");
        j["image_curve_factors"] = json!(curve);
        if !agree {
            status = 1;
        }
    }
    Ok(Report { text, json: j, svg: None, status })
}

fn normalize_cmd(file: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (cs, _) = constellations(file, cfg)?;
    let mut text = String::new();
    let mut out = Vec::new();
    let mut status = 0;
    for (i, c) in cs.iter().enumerate() {
        let n = normalization_genus(c, cfg.group_cap)?;
        write!(text, "{}group order {}; normalization genus {}; chi = {}", label(i, cs.len()), n.group_order, n.genus, n.chi).expect("string write");
        let mut j = json!({"group_order": n.group_order, "genus": n.genus, "chi": rational_to_json(&n.chi)});
        if c.degree() <= 5 && n.group_order <= 120 {
            let g = normalization_genus_tuple_oracle(c)?;
            write!(text, "; tuple oracle {g}").expect("string write");
            j["tuple_oracle"] = json!(g);
            if g != n.genus {
                status = 1;
            }
        }
        text.push('\n');
        out.push(j);
    }
    Ok(Report { text, json: json!(out), svg: None, status })
}

fn monodromy_cmd(file: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (_, maps) = read_maps(file)?;
    let run = extract_monodromy_capped(&maps, cfg.precision, cfg.precision_cap)?;
    let mut text = String::new();
    for (i, c) in run.constellations.iter().enumerate() {
        writeln!(text, "{}degree {}", label(i, maps.len()), c.degree()).expect("string write");
        for (b, p) in c.branch_points().iter().zip(c.perms()) {
            writeln!(text, "  {b}: {p}").expect("string write");
        }
    }
    let j = json!({
        "constellations": run.constellations.iter().map(constellation_to_json).collect::<Vec<_>>(),
        "max_precision": run.max_precision,
    });
    Ok(Report::ok(text, j))
}

fn parse_point(k: &NumberField, s: &str) -> Result<SpherePoint, CliError> {
    let v = serde_json::from_str::<Value>(s).unwrap_or_else(|_| Value::String(s.to_string()));
    Ok(point_from_json(k, &v)?)
}

/// Generators from a file with a `"generators"` list, or the deck
/// generators of its maps followed by `mu` (default `z + 1`).
fn generators(doc: &Value) -> Result<(NumberField, Vec<Moebius>, Option<Vec<RationalMap>>), CliError> {
    if let Some(g) = doc.get("generators") {
        let k = document_field(doc)?;
        return Ok((k.clone(), moebius_list_from_json(&k, g)?, None));
    }
    let (k, maps) = maps_from_document(doc)?;
    let mu = match doc.get("mu") {
        Some(m) => moebius_from_json(&k, m)?,
        None => default_mu(&k),
    };
    Ok((k, shared_generators(&maps, &mu)?, Some(maps)))
}

/// The base point: explicit, from the document, or the first admissible
/// rational, with a note when substituted.
fn base_point(
    explicit: Option<&str>,
    doc: &Value,
    k: &NumberField,
    maps: Option<&[RationalMap]>,
    notes: &mut Vec<String>,
) -> Result<SpherePoint, CliError> {
    let base = match (explicit, doc.get("base")) {
        (Some(s), _) => parse_point(k, s)?,
        (None, Some(b)) => point_from_json(k, b)?,
        (None, None) => {
            let maps = maps.ok_or_else(|| input_error("no base point given and no maps to choose one from"))?;
            let b = admissible_base(maps)?;
            notes.push(format!("base point {} chosen: first rational that is not a critical point", b.render(k)));
            return Ok(b);
        }
    };
    if let Some(maps) = maps {
        if is_critical_point(maps, &base)? {
            notes.push(format!("base point {} is a critical point of a map", base.render(k)));
        }
    }
    Ok(base)
}

fn orbit_cmd(args: &OrbitArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let doc = read_json(&args.gens)?;
    let (k, gens, maps) = generators(&doc)?;
    let mut notes = Vec::new();
    let base = base_point(args.base.as_deref(), &doc, &k, maps.as_deref(), &mut notes)?;
    let depth = args.depth.unwrap_or(cfg.depth);
    let s = orbit(&k, base, gens, depth, args.cap.unwrap_or(cfg.point_cap))?;
    let mut text = String::new();
    for n in &notes {
        writeln!(text, "note: {n}").expect("string write");
    }
    writeln!(
        text,
        "orbit of {} under {} generators to depth {}: {} points",
        s.base().render(&k),
        s.generators().len(),
        depth,
        s.len()
    )
    .expect("string write");
    for w in 0..=depth {
        let level: Vec<String> = s.points().filter(|(_, l)| *l == w).map(|(p, _)| p.render(&k)).collect();
        writeln!(text, "  {w}: {}", level.join(", ")).expect("string write");
    }
    let plot = svg::scatter(&k, &s);
    if let Some(path) = &args.svg {
        std::fs::write(path, &plot).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut j = orbit_to_json(&s);
    j["notes"] = json!(notes);
    Ok(Report { text, json: j, svg: Some(plot), status: 0 })
}

fn render_set(k: &NumberField, ps: &[SpherePoint]) -> String {
    ps.iter().map(|p| p.render(k)).collect::<Vec<_>>().join(", ")
}

fn construct_cmd(maps_file: &Path, orbit_file: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (k, maps) = read_maps(maps_file)?;
    let s = orbit_from_json(&read_json(orbit_file)?, cfg.point_cap)?;
    let sets = construct_sets(&maps, &s)?;
    let mut text = String::new();
    for v in &sets {
        writeln!(text, "K_{} ({} values): {}", v.map_index + 1, v.len(), render_set(&k, &v.values)).expect("string write");
    }
    let j = json!({"field": preimage_core::json::field_to_json(&k), "sets": sets.iter().map(|v| value_set_to_json(&k, v)).collect::<Vec<_>>()});
    Ok(Report::ok(text, j))
}

fn verify_cmd(args: &VerifyArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let doc = read_json(&args.file)?;
    let (k, maps) = maps_from_document(&doc)?;
    let mu = match doc.get("mu") {
        Some(m) => moebius_from_json(&k, m)?,
        None => default_mu(&k),
    };
    let gens = shared_generators(&maps, &mu)?;
    let mut notes = Vec::new();
    let base = base_point(None, &doc, &k, Some(&maps), &mut notes)?;
    let depth = args.depth.unwrap_or(cfg.depth);
    let window = args.window.unwrap_or(cfg.window);
    let s = orbit(&k, base, gens, depth, cfg.point_cap)?;
    let sets: Vec<ValueSet> = match doc.get("sets") {
        Some(list) => list
            .as_array()
            .ok_or_else(|| input_error("\"sets\" must be a list"))?
            .iter()
            .map(|v| value_set_from_json(&k, v))
            .collect::<Result<_, _>>()?,
        None => construct_sets(&maps, &s)?,
    };
    let r = if args.single_k { verify_single_k(&maps, &sets, &s, window)? } else { verify_shared_preimage(&maps, &sets, &s, window)? };
    let mut text = String::new();
    for n in &notes {
        writeln!(text, "note: {n}").expect("string write");
    }
    writeln!(text, "orbit of {} to depth {depth}: {} points; window {window}, margin {}", s.base().render(&k), s.len(), r.margin)
        .expect("string write");
    for c in &r.checks {
        writeln!(text, "{}: {}", c.kind, if c.passed { "pass" } else { "FAIL" }).expect("string write");
        for x in &c.counterexamples {
            writeln!(text, "  {x}").expect("string write");
        }
    }
    for (i, pre) in r.window_preimages.iter().enumerate() {
        writeln!(text, "P_{0}^-1(K_{0}) on the window: {1}", i + 1, render_set(&k, pre)).expect("string write");
    }
    writeln!(text, "result: {}", if r.passed() { "pass" } else { "FAIL" }).expect("string write");
    let mut j = report_to_json(&k, &r);
    j["notes"] = json!(notes);
    j["base"] = point_to_json(&k, s.base());
    Ok(Report { text, json: j, svg: None, status: if r.passed() { 0 } else { 1 } })
}

fn reduce_cmd(file: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (_, maps) = read_maps(file)?;
    Ok(match finite_group_reduction(&maps, cfg.group_cap)? {
        Reduction::Finite { group, quotient, factors } => {
            let mut text = format!("finite group of order {}; A = {}\n", group.order().unwrap_or(0), quotient.render("z"));
            for (i, f) in factors.iter().enumerate() {
                writeln!(text, "F_{} = {}", i + 1, f.render("z")).expect("string write");
            }
            let j = json!({
                "finite": true,
                "group": preimage_core::json::group_to_json(&group),
                "quotient": map_to_json(&quotient),
                "factors": factors.iter().map(map_to_json).collect::<Vec<_>>(),
            });
            Report::ok(text, j)
        }
        Reduction::Infinite(cert) => {
            let text = format!(
                "absent: the group is infinite; ball sizes {:?}; {} has infinite order\n",
                cert.ball_sizes,
                cert.infinite_order_element.render("z")
            );
            Report::ok(text, json!({"finite": false, "certificate": growth_certificate_to_json(&cert)}))
        }
    })
}

fn corpus_cmd() -> Result<Report, CliError> {
    let checks = corpus_check()?;
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).expect("string write");
    }
    let all = checks.iter().all(|c| c.passed);
    let j = json!({
        "passed": all,
        "checks": checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
    });
    Ok(Report { text, json: j, svg: None, status: if all { 0 } else { 1 } })
}
