//! Classical groups acting on subspaces.

use super::{validated_group, ConstructedAction, FamilyError, FamilySpec, LinearModel};
use crate::formulas::group_order;
use crate::gf::{DomainKind, Field, Form, FormKind, Matrix, Sign, SubspaceDomain};

/// Constructible classical families: `(group, q, largest d)`.
///
/// `Linear` covers `LinearOnPk`, `Symplectic` covers `SpOnSk`, `Orthogonal`
/// covers the `GO`/`Ω` actions on `S_1` and `N_1`, and `Unitary` the two
/// unitary actions (with `q` the order of the subfield).
pub const ENVELOPE: &[(&str, u32, usize)] = &[
    ("Linear", 2, 6),
    ("Linear", 3, 4),
    ("Linear", 4, 4),
    ("Linear", 5, 3),
    ("Linear", 7, 3),
    ("Linear", 8, 3),
    ("Linear", 9, 3),
    ("Symplectic", 2, 8),
    ("Symplectic", 3, 6),
    ("Symplectic", 4, 4),
    ("Symplectic", 5, 4),
    ("Orthogonal", 2, 8),
    ("Orthogonal", 3, 8),
    ("Orthogonal", 4, 6),
    ("Orthogonal", 5, 5),
    ("Unitary", 2, 4),
    ("Unitary", 3, 4),
];

/// Largest constructible dimension for a classical `group` over `GF(q)`.
pub fn envelope_max_dimension(group: &str, q: u32) -> Option<usize> {
    ENVELOPE.iter().find(|(g, qq, _)| *g == group && *qq == q).map(|e| e.2)
}

fn envelope_group(spec: &FamilySpec) -> &'static str {
    match spec {
        FamilySpec::LinearOnPk { .. } => "Linear",
        FamilySpec::SpOnSk { .. } => "Symplectic",
        FamilySpec::UnitaryOnS1 { .. } | FamilySpec::UnitaryOnN1 { .. } => "Unitary",
        _ => "Orthogonal",
    }
}

/// `t_12(ω^j)` for `j < f`, and the signed cyclic matrix `e_i ↦ e_{i+1}`,
/// `e_d ↦ (−1)^{d−1} e_1`. Over a prime field this is two generators.
pub(crate) fn sl_generators(field: &'static Field, d: usize) -> Vec<Matrix> {
    if d < 2 {
        return Vec::new();
    }
    let mut gens: Vec<Matrix> = field
        .additive_basis()
        .into_iter()
        .map(|l| Matrix::elementary(field, d, 0, 1, l))
        .collect();
    let mut w = Matrix::zeros(field, d, d);
    for i in 0..d - 1 {
        w.set(i, i + 1, 1);
    }
    w.set(d - 1, 0, if d % 2 == 1 { 1 } else { field.neg(1) });
    gens.push(w);
    gens
}

fn unit(d: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0u8; d];
    v[i] = 1;
    v
}

/// Vectors `e_i` and `e_i + λ e_j` (`i < j`, `λ ≠ 0`).
fn low_weight_vectors(field: &'static Field, d: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = (0..d).map(|i| unit(d, i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            for l in field.elements().filter(|&l| l != 0) {
                let mut v = unit(d, i);
                v[j] = l;
                out.push(v);
            }
        }
    }
    out
}

/// Symplectic transvections in `e_i` and `e_i + e_j`, scaled by an additive basis.
pub(crate) fn sp_generators(form: &Form) -> Result<Vec<Matrix>, FamilyError> {
    let field = form.field();
    let d = form.dimension();
    let mut vs: Vec<Vec<u8>> = (0..d).map(|i| unit(d, i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            let mut v = unit(d, i);
            v[j] = 1;
            vs.push(v);
        }
    }
    let mut gens = Vec::new();
    for v in &vs {
        for l in field.additive_basis() {
            gens.push(form.transvection(v, l)?);
        }
    }
    Ok(gens)
}

/// Reflections in the nonsingular vectors of weight at most two, and of
/// weight three with 0/1 entries in even characteristic.
pub(crate) fn go_generators(form: &Form) -> Result<Vec<Matrix>, FamilyError> {
    let d = form.dimension();
    let mut vs = low_weight_vectors(form.field(), d);
    if form.field().characteristic() == 2 {
        // Weight-two vectors stay inside hyperbolic pairs of the plus form.
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut v = unit(d, i);
                    v[j] = 1;
                    v[k] = 1;
                    vs.push(v);
                }
            }
        }
    }
    let mut gens = Vec::new();
    for v in vs {
        if !form.is_singular(&v) {
            gens.push(form.reflection(&v)?);
        }
    }
    // Reflections generate a subgroup of index two in GO+_4(2).
    // Reflections generate a subgroup of index two in GO+_4(2); add the
    // Eichler transformations x -> x + B(x,u)v - B(x,v)u for orthogonal
    // singular basis vectors u, v.
    if form.field().characteristic() == 2 {
        let f = form.field();
        for i in 0..d {
            for j in i + 1..d {
                let (u, v) = (unit(d, i), unit(d, j));
                if !form.is_singular(&u) || !form.is_singular(&v) || form.polar(&u, &v)? != 0 {
                    continue;
                }
                let rows: Vec<Vec<u8>> = (0..d)
                    .map(|r| {
                        let x = unit(d, r);
                        let (bu, bv) = (form.polar(&x, &u)?, form.polar(&x, &v)?);
                        Ok((0..d).map(|c| f.sub(f.add(x[c], f.mul(bu, v[c])), f.mul(bv, u[c]))).collect())
                    })
                    .collect::<Result<_, crate::gf::GfError>>()?;
                gens.push(Matrix::from_rows(f, &rows)?);
            }
        }
    }
    Ok(gens)
}

/// Unitary transvections in the normalized isotropic vectors of weight two,
/// and in the isotropic 0/1 vectors of larger weight.
pub(crate) fn su_generators(form: &Form) -> Result<Vec<Matrix>, FamilyError> {
    let field = form.field();
    let d = form.dimension();
    let trace_zero: Vec<u8> = field
        .elements()
        .filter(|&l| l != 0 && field.conjugate(l).is_ok_and(|c| field.add(l, c) == 0))
        .collect();
    let mut gens = Vec::new();
    for v in crate::gf::vectors::all_vectors(field.q(), d) {
        let weight = v.iter().filter(|&&x| x != 0).count();
        let leading_one = v.iter().find(|&&x| x != 0) == Some(&1);
        let wanted = weight == 2 || (weight > 2 && v.iter().all(|&x| x <= 1));
        if wanted && leading_one && form.is_singular(&v) {
            for &l in &trace_zero {
                gens.push(form.transvection(&v, l)?);
            }
        }
    }
    Ok(gens)
}

/// What to build for a classical spec.
struct Plan {
    field: &'static Field,
    form: Option<Form>,
    kind: DomainKind,
    k: usize,
    generators: Vec<Matrix>,
    /// Take the derived subgroup of the generated group.
    derived: bool,
}

fn plan(spec: &FamilySpec) -> Result<Plan, FamilyError> {
    let quadratic = |d: usize, q: u32, sign: Sign| Form::standard(FormKind::Quadratic, d, q, Some(sign));
    Ok(match *spec {
        FamilySpec::LinearOnPk { d, q, k } => {
            let field = Field::get(q)?;
            Plan {
                field,
                form: None,
                kind: DomainKind::All,
                k,
                generators: sl_generators(field, d),
                derived: false,
            }
        }
        FamilySpec::SpOnSk { d, q, k } => {
            let form = Form::standard(FormKind::Symplectic, d, q, None)?;
            Plan {
                field: form.field(),
                generators: sp_generators(&form)?,
                form: Some(form),
                kind: DomainKind::TotallySingular,
                k,
                derived: false,
            }
        }
        FamilySpec::GOOnS1 { d, q, sign }
        | FamilySpec::OmegaOnS1 { d, q, sign }
        | FamilySpec::GOOnN1 { d, q, sign, .. }
        | FamilySpec::OmegaOnN1 { d, q, sign, .. } => {
            let form = quadratic(d, q, sign)?;
            let kind = match spec {
                FamilySpec::GOOnN1 { class, .. } | FamilySpec::OmegaOnN1 { class, .. } => {
                    DomainKind::Nondegenerate(class.filter())
                }
                _ => DomainKind::TotallySingular,
            };
            Plan {
                field: form.field(),
                generators: go_generators(&form)?,
                form: Some(form),
                kind,
                k: 1,
                derived: matches!(spec, FamilySpec::OmegaOnS1 { .. } | FamilySpec::OmegaOnN1 { .. }),
            }
        }
        FamilySpec::UnitaryOnS1 { d, q } | FamilySpec::UnitaryOnN1 { d, q } => {
            let form = Form::standard(FormKind::Hermitian, d, q * q, None)?;
            let kind = if matches!(spec, FamilySpec::UnitaryOnS1 { .. }) {
                DomainKind::TotallySingular
            } else {
                DomainKind::Nondegenerate(crate::gf::NondegenerateFilter::Any)
            };
            Plan {
                field: form.field(),
                generators: su_generators(&form)?,
                form: Some(form),
                kind,
                k: 1,
                derived: false,
            }
        }
        _ => return Err(FamilyError::InvalidParameters(format!("{spec} is not a classical family"))),
    })
}

/// The `GO` spec whose derived subgroup gives an `Ω` spec.
fn full_orthogonal(spec: &FamilySpec) -> FamilySpec {
    match *spec {
        FamilySpec::OmegaOnS1 { d, q, sign } => FamilySpec::GOOnS1 { d, q, sign },
        FamilySpec::OmegaOnN1 { d, q, sign, class } => FamilySpec::GOOnN1 { d, q, sign, class },
        _ => spec.clone(),
    }
}

fn dimension(spec: &FamilySpec) -> usize {
    match *spec {
        FamilySpec::LinearOnPk { d, .. }
        | FamilySpec::SpOnSk { d, .. }
        | FamilySpec::GOOnS1 { d, .. }
        | FamilySpec::OmegaOnS1 { d, .. }
        | FamilySpec::GOOnN1 { d, .. }
        | FamilySpec::OmegaOnN1 { d, .. }
        | FamilySpec::UnitaryOnS1 { d, .. }
        | FamilySpec::UnitaryOnN1 { d, .. } => d,
        _ => 0,
    }
}

fn field_parameter(spec: &FamilySpec) -> u32 {
    match *spec {
        FamilySpec::LinearOnPk { q, .. }
        | FamilySpec::SpOnSk { q, .. }
        | FamilySpec::GOOnS1 { q, .. }
        | FamilySpec::OmegaOnS1 { q, .. }
        | FamilySpec::GOOnN1 { q, .. }
        | FamilySpec::OmegaOnN1 { q, .. }
        | FamilySpec::UnitaryOnS1 { q, .. }
        | FamilySpec::UnitaryOnN1 { q, .. } => q,
        _ => 0,
    }
}

/// Projective image of a classical group on its subspace domain.
///
/// Every generator is checked to preserve the form, the generated group is
/// checked against the order formula, and `Ω` is taken as the derived subgroup
/// of the checked `GO`.
pub(super) fn classical(spec: &FamilySpec) -> Result<ConstructedAction, FamilyError> {
    let group_name = envelope_group(spec);
    let (d, q) = (dimension(spec), field_parameter(spec));
    if envelope_max_dimension(group_name, q).is_none_or(|max| d > max) {
        return Err(FamilyError::OutsideEnvelope(spec.to_string()));
    }
    let plan = plan(spec)?;
    if let Some(form) = &plan.form {
        if let Some(bad) = plan.generators.iter().find(|m| !form.preserved_by(m)) {
            return Err(FamilyError::InvalidParameters(format!("{spec}: generator {bad:?} is not an isometry")));
        }
    } else if plan.generators.iter().any(|m| m.det().ok() != Some(1)) {
        return Err(FamilyError::InvalidParameters(format!("{spec}: generator outside SL")));
    }
    let domain = SubspaceDomain::enumerate(plan.field, d, plan.k, plan.kind, plan.form.as_ref())?;
    let perms = plan
        .generators
        .iter()
        .map(|m| domain.action(m))
        .collect::<Result<Vec<_>, _>>()?;
    let full = full_orthogonal(spec);
    let mut group = validated_group(&full, domain.len(), perms, &group_order(&full)?)?;
    if plan.derived {
        group = group.derived_subgroup();
    }
    let labels = (0..domain.len()).map(|i| domain.label(i)).collect();
    let mut action = ConstructedAction::new(spec.clone(), group, labels);
    action.linear = Some(LinearModel {
        form: plan.form,
        domain,
    });
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build;

    fn built(s: &str) -> ConstructedAction {
        build(&s.parse().unwrap()).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn sl_generators_have_determinant_one() {
        for q in [2, 3, 4, 9] {
            let f = Field::get(q).unwrap();
            for d in 2..5 {
                assert!(sl_generators(f, d).iter().all(|m| m.det().unwrap() == 1));
            }
        }
    }

    #[test]
    fn linear_orders() {
        let a = built("LinearOnPk(d=3,q=2,k=1)");
        assert_eq!((a.n, a.group.order()), (7, 168u32.into()));
        let a = built("LinearOnPk(d=4,q=3,k=1)");
        assert_eq!(a.n, 40);
        let a = built("LinearOnPk(d=3,q=4,k=1)");
        assert_eq!(a.n, 21);
        let a = built("LinearOnPk(d=4,q=2,k=2)");
        assert_eq!(a.n, 35);
    }

    #[test]
    fn symplectic_and_orthogonal_orders() {
        let a = built("SpOnSk(d=6,q=2,k=1)");
        assert_eq!((a.n, a.group.order()), (63, 1_451_520u32.into()));
        let a = built("GOOnS1(d=6,q=2,sign=-)");
        assert_eq!(a.n, 27);
        let o = built("OmegaOnS1(d=6,q=2,sign=-)");
        assert_eq!(a.group.order(), o.group.order() * 2u32);
        assert_eq!(built("GOOnS1(d=8,q=2,sign=-)").n, 119);
        assert_eq!(built("OmegaOnS1(d=5,q=3,sign=o)").n, 40);
    }

    #[test]
    fn plus_type_in_even_characteristic() {
        let a = built("GOOnS1(d=4,q=2,sign=+)");
        assert_eq!((a.n, a.group.order()), (9, 72u32.into()));
        let a = built("GOOnS1(d=6,q=2,sign=+)");
        assert_eq!((a.n, a.group.order()), (35, 40_320u32.into()));
        assert_eq!(built("GOOnN1(d=6,q=2,sign=+,class=all)").n, 28);
        assert_eq!(built("GOOnN1(d=8,q=2,sign=-,class=all)").n, 136);
    }

    #[test]
    fn unitary_orders() {
        let a = built("UnitaryOnS1(d=3,q=3)");
        assert_eq!((a.n, a.group.order()), (28, 6048u32.into()));
        let a = built("UnitaryOnN1(d=4,q=2)");
        assert_eq!(a.n, 40);
    }

    #[test]
    fn envelope_is_enforced() {
        let spec: FamilySpec = "LinearOnPk(d=7,q=2,k=1)".parse().unwrap();
        assert!(matches!(build(&spec), Err(FamilyError::OutsideEnvelope(_))));
    }
}
