use std::path::Path;
use std::sync::Arc;

use crate::abelianization::{
    check_cokernel, check_kernel, cokernel_pres, find_isomorphism, kernel_pres, sample_coherent_maps, test_objects,
    universal_cohomological, LinearCategory, ModelAmbient, Presentation, VectAmbient,
};
use crate::complexes::FinAlgebra;
use crate::fincat::{
    find_left_adjoint, is_localization_functor, local_object_conditions, local_objects,
    path_localization_oracle, validate_category, FinCategory, MorId, MorphismSet, ObjId,
};
use crate::fractions::{build_fraction_category, check_calculus_left, check_calculus_right, saturation, FractionError, LFReport};
use crate::linalg::{all_vectors, Matrix};
use crate::modloc::{localize_ring, verify_localization_adjunction, MultSet};
use crate::triangulated::{
    bousfield_harness, colocalization_check, gamma_triangle, orthogonal_pair_check, perp_left, perp_right,
    recollement_from_idempotent, thick_closure, verdier_quotient, verify_axioms, AxiomWitness, Caps,
    ThickSubcat, TriangulatedError, TriangulatedModel,
};

use super::inputs::{find_objects, load_algebra, load_category, load_ring, load_sigma};
use super::{CategoryInput, CliError, Command, ModelInput, Report, RunConfig, Section, SubcategoryInput};

const WITNESS_LINES: usize = 5;

pub(super) fn dispatch(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    match &cfg.command {
        Command::CheckCategory { file } => check_category(file, r),
        Command::CheckLf(input) => check_lf(input, r),
        Command::Localize(input) => localize(cfg, input, r),
        Command::LocalObjects(input) => local_objects_cmd(input, r),
        Command::Saturate(input) => saturate(input, r),
        Command::KbBuild(input) => kb_build(cfg, input, r),
        Command::VerifyTr(input) => verify_tr(cfg, input, r),
        Command::Thick(input) => thick(cfg, input, r),
        Command::Verdier(input) => verdier(cfg, input, r),
        Command::Perp(input) => perp(cfg, input, r),
        Command::Bousfield(input) => bousfield(cfg, input, r),
        Command::Gamma { input, at } => gamma(cfg, input, at, r),
        Command::RecollementIdem { model, idempotent, tor_depth } => recollement(cfg, model, idempotent, *tor_depth, r),
        Command::Abelianize(input) => abelianize(cfg, input, r),
        Command::Modloc { ring, mult } => modloc(cfg, ring, mult, r),
    }
}

fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn names(c: &FinCategory, ids: impl IntoIterator<Item = MorId>) -> String {
    ids.into_iter().map(|m| c.name(m).to_string()).collect::<Vec<_>>().join(", ")
}

fn object_list(c: &FinCategory, ids: impl IntoIterator<Item = ObjId>) -> String {
    let v: Vec<String> = ids.into_iter().map(|x| c.object_name(x).to_string()).collect();
    if v.is_empty() {
        "(none)".into()
    } else {
        v.join(", ")
    }
}

/// Loads a category file and rejects invalid categories.
fn valid_category(input: &CategoryInput, r: &mut Report) -> Result<(FinCategory, MorphismSet), CliError> {
    let (file, c) = load_category(&input.file)?;
    if let Some(v) = validate_category(&c).violations.first() {
        return Err(CliError::Input(format!("{}: not a category: {}", input.file.display(), v.describe(&c))));
    }
    let sigma = load_sigma(&file, &c, &input.sigma)?;
    r.param("input", input.file.display());
    r.param("sigma", format!("{{{}}}", names(&c, sigma.ids())));
    Ok((c, sigma))
}

fn check_category(file: &Path, r: &mut Report) -> Result<(), CliError> {
    let (_, c) = load_category(file)?;
    r.param("input", file.display());
    let report = validate_category(&c);
    let mut s = Section::check(
        "category axioms",
        "identities exist, composites are typed, unit laws and associativity hold (full enumeration)",
        report.is_valid(),
    )
    .line(format!("objects: {}", c.num_objects()))
    .line(format!("morphisms: {}", c.num_morphisms()));
    for v in report.violations.iter().take(WITNESS_LINES) {
        s.push(format!("violation: {}", v.describe(&c)));
    }
    r.add(s);
    Ok(())
}

fn lf_lines(c: &FinCategory, rep: &LFReport, s: &mut Section) {
    if rep.identities_added {
        s.push("identities added to Σ");
    }
    match rep.lf1 {
        None => s.push("LF1 closure under composition: pass"),
        Some((t, u)) => s.push(format!("LF1 closure under composition: fail, {} ∘ {} is not in Σ", c.name(t), c.name(u))),
    }
    match rep.lf2 {
        None => s.push("LF2 square completion: pass"),
        Some((sg, al)) => s.push(format!("LF2 square completion: fail, (σ, α) = ({}, {}) has no completing square", c.name(sg), c.name(al))),
    }
    match rep.lf3 {
        None => s.push("LF3 cancellation: pass"),
        Some((al, be, sg)) => s.push(format!(
            "LF3 cancellation: fail, ({}, {}) agree after {} but no element of Σ equalizes them",
            c.name(al),
            c.name(be),
            c.name(sg)
        )),
    }
}

fn check_lf(input: &CategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (c, sigma) = valid_category(input, r)?;
    let left = check_calculus_left(&c, &sigma);
    let mut s = Section::check(
        "calculus of left fractions",
        "Σ is closed under composition, completes spans to commuting squares and equalizes the pairs it coequalizes",
        left.passes(),
    );
    lf_lines(&c, &left, &mut s);
    r.add(s);
    let right = check_calculus_right(&c, &sigma);
    let mut s = Section::info("calculus of right fractions", "the dual axioms, reported for reference");
    lf_lines(&c, &right, &mut s);
    r.add(s);
    Ok(())
}

fn localize(cfg: &RunConfig, input: &CategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (c, sigma) = valid_category(input, r)?;
    r.param("path-len-cap", cfg.caps.path_len_cap);
    let fc = match build_fraction_category(&c, &sigma) {
        Ok(fc) => fc,
        Err(FractionError::CalculusFails(rep)) => {
            let mut s = Section::check("calculus of left fractions", "Σ admits a calculus of left fractions", false);
            lf_lines(&c, &rep, &mut s);
            r.add(s);
            return Ok(());
        }
        Err(e) => return Err(input_error(e)),
    };
    let q = &fc.category;
    let mut table = Section::info("hom table of the localization", "sizes of the hom-sets of the category of left fractions");
    for x in c.objects() {
        for y in c.objects() {
            table.push(format!("{} -> {}: {}", c.object_name(x), c.object_name(y), fc.hom_size(x, y)));
        }
    }
    for (m, class) in fc.classes.iter().enumerate() {
        if !q.is_identity(m) {
            table.push(format!("class: {}", class.representative.display(&c)));
        }
    }
    r.add(table);
    let inverted = sigma.ids().all(|s| q.is_iso(fc.functor.mor(s)));
    r.add(Section::check("quotient functor inverts Σ", "the image of every element of Σ is invertible", inverted));
    let mut s;
    match path_localization_oracle(&c, &sigma, cfg.caps.path_len_cap) {
        Ok(oracle) => {
            let n = c.num_objects();
            let mismatches: Vec<String> = c
                .objects()
                .flat_map(|x| c.objects().map(move |y| (x, y)))
                .filter(|&(x, y)| oracle.class_counts[x * n + y] != fc.hom_size(x, y))
                .map(|(x, y)| format!("{} -> {}: fractions {}, paths {}", c.object_name(x), c.object_name(y), fc.hom_size(x, y), oracle.class_counts[x * n + y]))
                .collect();
            s = Section::check(
                "agreement with the path-category localization",
                "hom-set sizes of the fraction category equal the class counts of the bounded path quotient",
                mismatches.is_empty() && oracle.stabilized,
            )
            .line(format!("stabilized: {}", oracle.stabilized));
            for m in mismatches.iter().take(WITNESS_LINES) {
                s.push(m.clone());
            }
        }
        Err(e) => {
            s = Section::check(
                "agreement with the path-category localization",
                "hom-set sizes of the fraction category equal the class counts of the bounded path quotient",
                false,
            )
            .line(format!("oracle unavailable: {e}"));
        }
    }
    r.add(s);
    Ok(())
}

fn local_objects_cmd(input: &CategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (c, sigma) = valid_category(input, r)?;
    let locals = local_objects(&c, &sigma);
    r.add(
        Section::info("Σ-local objects", "objects X with C(W', X) → C(W, X) bijective for every W → W' in Σ")
            .line(format!("local: {}", object_list(&c, locals.iter().copied()))),
    );
    if locals.is_empty() {
        return Ok(());
    }
    let (d, inc) = c.full_subcategory(&locals);
    let Some((f, eta)) = find_left_adjoint(&d, &c, &inc).found() else {
        r.add(Section::info("reflection onto the local objects", "the inclusion of the local objects has a left adjoint").line("no left adjoint"));
        return Ok(());
    };
    let l = f.then(&inc);
    let verdict = is_localization_functor(&c, &l, &eta);
    let mut s = Section::check(
        "reflection onto the local objects",
        "the reflection L with unit η satisfies Lη = ηL with both invertible",
        verdict.holds(),
    );
    for x in c.objects() {
        s.push(format!("L({}) = {}", c.object_name(x), c.object_name(l.obj(x))));
    }
    r.add(s);
    if !verdict.holds() {
        return Ok(());
    }
    let mut s = Section::check(
        "characterizations of local objects",
        "X is local iff precomposition with η is bijective iff η_X is invertible iff L is bijective on C(-, X) iff X ≅ LX'",
        true,
    );
    let mut all = true;
    for x in c.objects() {
        let k = local_object_conditions(&c, &l, &eta, x);
        all &= k.agree();
        s.push(format!(
            "{}: local {}, unit-bijective {}, unit-invertible {}, functor-bijective {}, in-image {}",
            c.object_name(x),
            k.local,
            k.unit_bijective,
            k.unit_invertible,
            k.functor_bijective,
            k.in_image
        ));
    }
    s.status = super::Status::of(all);
    r.add(s);
    Ok(())
}

fn saturate(input: &CategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (c, sigma) = valid_category(input, r)?;
    let certifies = "the saturation contains Σ and is its own saturation";
    match saturation(&c, &sigma) {
        Ok(sat) => {
            let again = saturation(&c, &sat).map_err(input_error)?;
            let ok = sigma.is_subset(&sat) && again == sat;
            r.add(Section::check("saturation", certifies, ok).line(format!("saturation: {{{}}}", names(&c, sat.ids()))));
        }
        Err(FractionError::CalculusFails(rep)) => {
            let mut s = Section::check("saturation", "the closure of Σ admits a calculus of left fractions", false);
            lf_lines(&c, &rep, &mut s);
            r.add(s);
        }
        Err(e) => return Err(input_error(e)),
    }
    Ok(())
}

fn model_from(cfg: &RunConfig, input: &ModelInput, r: &mut Report) -> Result<TriangulatedModel, CliError> {
    let alg = load_algebra(&input.algebra, cfg.p)?;
    build_model(cfg, alg, &input.algebra, input.corrupt, r)
}

fn build_model(cfg: &RunConfig, alg: Arc<FinAlgebra>, name: &str, corrupt: bool, r: &mut Report) -> Result<TriangulatedModel, CliError> {
    r.param("algebra", format!("{name} (dimension {} over F_{})", alg.dim(), alg.modulus()));
    r.param("window", cfg.caps.window);
    r.param("dim-cap", cfg.caps.dim_cap);
    let caps = Caps::new(cfg.caps.window, cfg.caps.dim_cap);
    let model = TriangulatedModel::build(alg, caps).map_err(input_error)?;
    if corrupt {
        r.param("cones", "corrupted");
        return Ok(model.with_corrupted_cones());
    }
    Ok(model)
}

fn model_names(model: &TriangulatedModel, ids: impl IntoIterator<Item = ObjId>) -> String {
    let v: Vec<&str> = ids.into_iter().map(|x| model.name(x)).collect();
    if v.is_empty() {
        "(none)".into()
    } else {
        v.join(", ")
    }
}

fn kb_build(cfg: &RunConfig, input: &ModelInput, r: &mut Report) -> Result<(), CliError> {
    let model = model_from(cfg, input, r)?;
    let mc = model.to_category();
    r.add(
        Section::info("objects of the bounded homotopy model", "objects within the caps, up to homotopy equivalence")
            .line(format!("objects: {}", model.len()))
            .line(format!("indecomposable: {}", model_names(&model, model.indecomposables().iter().copied())))
            .line(format!("morphisms: {}", mc.category.num_morphisms())),
    );
    let mut s = Section::info("hom dimensions between indecomposables", "dimensions of homotopy classes of chain maps");
    for &x in model.indecomposables() {
        let row: Vec<String> = model.indecomposables().iter().map(|&y| model.hom_dim(x, y).to_string()).collect();
        s.push(format!("{}: {}", model.name(x), row.join(" ")));
    }
    r.add(s);
    let v = validate_category(&mc.category);
    r.add(Section::check(
        "model is a category",
        "composition of homotopy classes is associative and unital on the enumerated morphisms",
        v.is_valid(),
    ));
    Ok(())
}

fn witness_section(title: &str, certifies: &str, ws: &[AxiomWitness], checked: String) -> Section {
    let mut s = Section::check(title, certifies, ws.is_empty()).line(checked);
    for w in ws.iter().take(WITNESS_LINES) {
        s.push(format!("witness: {} ({})", w.morphisms.join(", "), w.reason));
    }
    s
}

fn verify_tr(cfg: &RunConfig, input: &ModelInput, r: &mut Report) -> Result<(), CliError> {
    let model = model_from(cfg, input, r)?;
    r.param("tr4-budget", cfg.caps.tr4_budget);
    let rep = verify_axioms(&model, cfg.caps.tr4_budget, cfg.seed);
    r.add(witness_section(
        "TR1",
        "identity triangles are exact and every morphism has an exact cone triangle",
        &rep.tr1,
        format!("morphisms checked: {}", rep.morphisms),
    ));
    r.add(witness_section(
        "TR2",
        "rotations of exact triangles in both directions are exact",
        &rep.tr2,
        format!("morphisms checked: {}", rep.morphisms),
    ));
    r.add(witness_section(
        "TR3",
        "commuting squares between exact triangles extend to morphisms of triangles",
        &rep.tr3,
        format!("pairs checked: {}", rep.tr3_pairs),
    ));
    r.add(witness_section(
        "TR4",
        "the octahedral axiom holds on sampled composable pairs",
        &rep.tr4,
        format!("samples: {}", rep.tr4_samples),
    ));
    Ok(())
}

fn subcategory(cfg: &RunConfig, input: &SubcategoryInput, r: &mut Report) -> Result<(TriangulatedModel, ThickSubcat), CliError> {
    let model = model_from(cfg, &input.model, r)?;
    let gens = find_objects(&model, &input.objects)?;
    r.param("generators", format!("{{{}}}", model_names(&model, gens.iter().copied())));
    let s = thick_closure(&model, &gens).map_err(input_error)?;
    Ok((model, s))
}

fn thick(cfg: &RunConfig, input: &SubcategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (model, s) = subcategory(cfg, input, r)?;
    let gens = find_objects(&model, &input.objects)?;
    let again = thick_closure(&model, &s.members()).map_err(input_error)?;
    let ok = gens.iter().all(|&g| s.contains(g)) && again.members() == s.members();
    r.add(
        Section::check(
            "thick closure",
            "the closure contains the generators and is closed under shifts, cones and summands",
            ok,
        )
        .line(format!("members: {}", s.len()))
        .line(format!("indecomposable: {}", model_names(&model, s.indecomposables())))
        .line(format!("objects: {}", model_names(&model, s.members()))),
    );
    Ok(())
}

fn hom_table(model: &TriangulatedModel, f: impl Fn(ObjId, ObjId) -> usize) -> Vec<String> {
    model
        .object_ids()
        .map(|x| {
            let row: Vec<String> = model.object_ids().map(|y| f(x, y).to_string()).collect();
            format!("{}: {}", model.name(x), row.join(" "))
        })
        .collect()
}

fn verdier(cfg: &RunConfig, input: &SubcategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (model, s) = subcategory(cfg, input, r)?;
    let mc = model.to_category();
    let q = match verdier_quotient(&model, &mc, &s) {
        Ok(q) => q,
        Err(TriangulatedError::MultiplicativeSystemFails(w)) => {
            r.add(Section::check("Σ(S) is a multiplicative system", "morphisms with cone in S admit both fraction calculi", false).line(w));
            return Ok(());
        }
        Err(e) => return Err(input_error(e)),
    };
    r.add(
        Section::check(
            "Σ(S) is a multiplicative system",
            "morphisms with cone in S admit both fraction calculi",
            q.left.passes() && q.right.passes(),
        )
        .line(format!("left: {}", q.left))
        .line(format!("right: {}", q.right))
        .line(format!("|Σ(S)|: {}", q.sigma.len())),
    );
    r.add(
        Section::check("kernel of the quotient functor", "the objects sent to zero in T/S are exactly those of S", q.kernel == s.members())
            .line(format!("kernel: {}", model_names(&model, q.kernel.iter().copied()))),
    );
    let mut t = Section::info("hom dimensions in T/S", "dimensions of hom-spaces of the quotient, rows by source");
    t.push(format!("columns: {}", model.names().join(" ")));
    for l in hom_table(&model, |x, y| q.hom_dim(x, y)) {
        t.push(l);
    }
    r.add(t);
    Ok(())
}

fn perp(cfg: &RunConfig, input: &SubcategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (model, s) = subcategory(cfg, input, r)?;
    let right = perp_right(&model, &s).map_err(input_error)?;
    let left = perp_left(&model, &s).map_err(input_error)?;
    let meets_zero = |o: &ThickSubcat| s.members().iter().all(|&x| !o.contains(x) || model.is_zero_object(x));
    r.add(
        Section::check(
            "orthogonal subcategories",
            "S⊥ and ⊥S are thick and meet S only in zero objects",
            meets_zero(&right) && meets_zero(&left),
        )
        .line(format!("S: {}", model_names(&model, s.members())))
        .line(format!("S⊥: {}", model_names(&model, right.members())))
        .line(format!("⊥S: {}", model_names(&model, left.members()))),
    );
    Ok(())
}

fn bousfield(cfg: &RunConfig, input: &SubcategoryInput, r: &mut Report) -> Result<(), CliError> {
    let (model, s) = subcategory(cfg, input, r)?;
    let mc = model.to_category();
    let v = bousfield_harness(&model, &mc, &s).map_err(input_error)?;
    const CONDITIONS: [&str; 6] = [
        "an exact localization functor with kernel S exists",
        "the inclusion S → T has a right adjoint",
        "every X sits in a triangle X' → X → X'' with X' in S and X'' in S⊥",
        "the quotient functor T → T/S has a right adjoint",
        "S⊥ → T → T/S is an equivalence",
        "the inclusion S⊥ → T has a left adjoint and ⊥(S⊥) = S",
    ];
    let mut sec = Section::check("Bousfield localization conditions", "the six conditions for S ⊆ T hold or fail together", v.consistent());
    for (i, (c, b)) in CONDITIONS.iter().zip(v.conditions).enumerate() {
        sec.push(format!("({}) {c}: {b}", i + 1));
    }
    r.add(sec);
    r.add(
        Section::info("acyclic and local objects", "objects killed by L and objects in its image")
            .line(format!("acyclic: {}", model_names(&model, v.acyclic.iter().copied())))
            .line(format!("local: {}", model_names(&model, v.local.iter().copied()))),
    );
    if let Some(loc) = &v.localization {
        let ok = orthogonal_pair_check(&model, loc).map_err(input_error)?;
        r.add(Section::check("orthogonal pair", "Ker L = ⊥(Im L) and (Ker L)⊥ = Im L", ok));
        if let Some(co) = &v.colocalization {
            r.add(Section::check(
                "colocalization",
                "Γ built from the right adjoint of S → T fits with L in a triangle ΓX → X → LX",
                colocalization_check(&model, &mc, loc, co),
            ));
        }
    }
    Ok(())
}

fn gamma(cfg: &RunConfig, input: &SubcategoryInput, at: &[String], r: &mut Report) -> Result<(), CliError> {
    let (model, s) = subcategory(cfg, input, r)?;
    let mc = model.to_category();
    let v = bousfield_harness(&model, &mc, &s).map_err(input_error)?;
    let certifies = "ΓX is acyclic, LX is local and the triangle is unique up to unique isomorphism";
    let Some(loc) = &v.localization else {
        r.add(Section::check("functorial triangle ΓX → X → LX → ΓX[1]", certifies, false).line("no localization functor with kernel S"));
        return Ok(());
    };
    let perp = perp_right(&model, &s).map_err(input_error)?;
    let targets = if at.is_empty() { model.object_ids().collect() } else { find_objects(&model, at)? };
    let mut sec = Section::check("functorial triangle ΓX → X → LX → ΓX[1]", certifies, true);
    let mut all = true;
    for x in targets {
        let g = gamma_triangle(&model, &mc, loc, &s, &perp, x).map_err(input_error)?;
        all &= g.holds();
        let gname = g.gamma.map_or_else(|| "(outside the model)".to_string(), |y| model.name(y).to_string());
        sec.push(format!(
            "{}: Γ = {}, L = {}, acyclic {}, local {}, triangles compared {}, unique {}",
            model.name(x),
            gname,
            model.name(g.local),
            g.gamma_acyclic,
            g.local_is_local,
            g.compared,
            g.unique
        ));
    }
    sec.status = super::Status::of(all);
    r.add(sec);
    Ok(())
}

fn recollement(cfg: &RunConfig, input: &ModelInput, e: &[u32], depth: usize, r: &mut Report) -> Result<(), CliError> {
    let alg = load_algebra(&input.algebra, cfg.p)?;
    r.param("algebra", format!("{} (dimension {} over F_{})", input.algebra, alg.dim(), alg.modulus()));
    r.param("idempotent", format!("{e:?}"));
    r.param("window", cfg.caps.window);
    r.param("dim-cap", cfg.caps.dim_cap);
    r.param("tor-depth", depth);
    if e.len() != alg.dim() || !alg.is_idempotent(e) {
        return Err(CliError::Input(format!("{e:?} is not an idempotent of the algebra")));
    }
    let rec = recollement_from_idempotent(alg, e, Caps::new(cfg.caps.window, cfg.caps.dim_cap)).map_err(input_error)?;
    let rep = rec.report(depth).map_err(input_error)?;
    r.add(
        Section::info("the three categories", "objects of the models for A/AeA, A and eAe")
            .line(format!("left: {} objects", rec.left.len()))
            .line(format!("middle: {} objects", rec.middle.len()))
            .line(format!("right: {} objects", rec.right.len())),
    );
    r.add(Section::check("stratifying ideal", "Tor_i(A/AeA, A/AeA) vanishes in positive degrees up to the depth", rep.tor_vanishes));
    r.add(
        Section::check("adjoint triples", "hom dimensions match for I_λ ⊣ I ⊣ I_ρ and Q_λ ⊣ Q ⊣ Q_ρ", rep.adjunctions.iter().all(|&b| b))
            .line(format!("I_λ ⊣ I {}, I ⊣ I_ρ {}, Q_λ ⊣ Q {}, Q ⊣ Q_ρ {}", rep.adjunctions[0], rep.adjunctions[1], rep.adjunctions[2], rep.adjunctions[3])),
    );
    r.add(
        Section::check("full embeddings", "I_λI, I_ρI, QQ_λ and QQ_ρ are isomorphic to the identity", rep.unit_isos.iter().all(|&b| b))
            .line(format!("{:?}", rep.unit_isos)),
    );
    r.add(Section::check("exactness in the middle", "the image of I is the kernel of Q", rep.image_is_kernel));
    Ok(())
}

fn vect_collapse(p: u32) -> (bool, usize) {
    let v = VectAmbient::new(p);
    let mut count = 0;
    let mut ok = true;
    for m in 0..=2 {
        for n in 0..=2 {
            for data in all_vectors(p, m * n) {
                let f = Presentation::new(v.morphism(&Matrix::new(p, n, m, data).expect("shape")));
                let k = f.evaluate(&v, &v.space(1));
                let h = Presentation::representable(&v, &v.space(k));
                ok &= find_isomorphism(&v, &f, &h, 1 << 12).is_some();
                count += 1;
            }
        }
    }
    (ok, count)
}

fn abelianize(cfg: &RunConfig, input: &ModelInput, r: &mut Report) -> Result<(), CliError> {
    let model = model_from(cfg, input, r)?;
    let budget = cfg.caps.tr4_budget;
    r.param("maps", budget);
    let u = universal_cohomological(&model, budget, cfg.seed).map_err(input_error)?;
    r.add(Section::check("Yoneda embedding is fully faithful", "dim Hom(hX, hY) = dim T(X, Y) for every pair of objects", u.fully_faithful));
    r.add(
        Section::check(
            "Yoneda embedding is cohomological",
            "hX → hY → hZ is exact for cone triangles, pointwise and in the functor category",
            u.exact && u.pointwise_exact,
        )
        .line(format!("triangles checked: {}", u.triangles_checked))
        .line(format!("triangles with cone outside the caps: {}", u.triangles_skipped)),
    );
    let amb = ModelAmbient::new(&model);
    let maps = sample_coherent_maps(&amb, budget, 2, cfg.seed);
    let mut ok = maps.len() == budget;
    for theta in &maps {
        let (_, iota) = kernel_pres(&amb, theta).map_err(input_error)?;
        let (_, pi) = cokernel_pres(&amb, theta);
        let tests = test_objects(&amb, &[theta.source.clone(), theta.target.clone()]);
        ok &= check_kernel(&amb, theta, &iota, &tests) && check_cokernel(&amb, theta, &pi, &tests);
    }
    let stats = amb.stats();
    r.add(
        Section::check(
            "kernels and cokernels of finitely presented functors",
            "the constructed kernel and cokernel satisfy their universal properties against representables and the endpoints",
            ok,
        )
        .line(format!("maps checked: {}", maps.len()))
        .line(format!("weak kernels from triangles: {}", stats.triangle))
        .line(format!("weak kernels by approximation: {}", stats.approximate)),
    );
    if model.algebra().dim() == 1 {
        let (ok, count) = vect_collapse(amb.modulus());
        r.add(
            Section::check(
                "semisimple collapse",
                "every presentation F_p^m → F_p^n with m, n ≤ 2 is isomorphic to a representable",
                ok,
            )
            .line(format!("presentations classified: {count}")),
        );
    }
    Ok(())
}

fn modloc(cfg: &RunConfig, ring: &str, mult: &[usize], r: &mut Report) -> Result<(), CliError> {
    let a = load_ring(ring)?;
    let s = MultSet::generated(&a, mult.iter().copied()).map_err(input_error)?;
    r.param("ring", format!("{} (order {})", a.name, a.order()));
    r.param("multiplicative set", format!("{:?}", s.iter().collect::<Vec<_>>()));
    r.param("module-order-cap", cfg.caps.module_order_cap);
    let loc = localize_ring(&a, &s);
    let fractions: Vec<String> = (0..loc.ring.order()).map(|c| loc.show(c)).collect();
    r.add(
        Section::info("ring of fractions", "classes of pairs (x, s) under t(s'x - sx') = 0 for some t in S")
            .line(format!("order {}", loc.ring.order()))
            .line(format!("classes: {}", fractions.join(", ")))
            .line(format!("zero ring: {}", loc.ring.order() == 1)),
    );
    r.add(Section::check(
        "S becomes invertible",
        "every s in S maps to a unit of the ring of fractions",
        s.iter().all(|t| loc.ring.is_unit(loc.canonical[t])),
    ));
    let rep = verify_localization_adjunction(&a, &s, cfg.caps.module_order_cap).map_err(input_error)?;
    r.add(
        Section::check(
            "localization is left adjoint to restriction",
            "Hom(S⁻¹M, N) → Hom(M, N), φ ↦ φ∘η_M, is bijective for all enumerated modules",
            rep.adjunction,
        )
        .line(format!("modules over the ring: {}", rep.modules))
        .line(format!("modules over the fractions: {}", rep.localized_modules)),
    );
    r.add(Section::check("counit is invertible", "S⁻¹N → N, x/s ↦ s⁻¹x, is an isomorphism for every module N over the fractions", rep.counit_invertible));
    r.add(Section::check("restriction is fully faithful", "restriction of scalars preserves hom-set sizes", rep.restriction_fully_faithful));
    r.add(Section::check("localization functor", "Lη = ηL and both are invertible", rep.localization_functor));
    r.add(
        Section::check(
            "local modules",
            "η_M is invertible iff every s in S acts bijectively iff M is orthogonal to the maps inverted by S⁻¹",
            rep.local_objects_agree,
        )
        .line(format!("local: {}", rep.local_modules.join(", "))),
    );
    Ok(())
}
