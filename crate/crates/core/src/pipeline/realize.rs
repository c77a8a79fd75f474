use std::fmt;
use std::str::FromStr;

use super::expand::{check_polyhedral, expand_with_rings};
use super::PipelineError;
use crate::catalog;
use crate::exec::Exec;
use crate::expansion::{has_polyhedral_property, ExpansionPatch};
use crate::growth::grow_at;
use crate::map::OrientedMap;
use crate::patch::Patch;
use crate::seq::CountSequence;
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Triangles and (3k+5)-gons.
    ThreeFive,
    /// Triangles and (3k+7)-gons.
    ThreeSeven,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::ThreeFive => "3:5",
            Family::ThreeSeven => "3:7",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3:5" => Ok(Family::ThreeFive),
            "3:7" => Ok(Family::ThreeSeven),
            other => Err(format!("unknown family `{other}` (expected 3:5 or 3:7)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub k: u32,
    pub passes: u32,
}

impl FamilySpec {
    pub fn new(family: Family, k: u32, passes: u32) -> Self {
        Self { family, k, passes }
    }

    /// Size of the large polygons.
    pub fn l(&self) -> u32 {
        match self.family {
            Family::ThreeFive => 3 * self.k + 5,
            Family::ThreeSeven => 3 * self.k + 7,
        }
    }

    /// Triangles per large polygon in `q`.
    fn triangles(&self) -> u64 {
        match self.family {
            Family::ThreeFive => 3 * self.k as u64 + 1,
            Family::ThreeSeven => 3 * self.k as u64 + 3,
        }
    }

    /// The census step `q = [t x 3, l]`.
    pub fn q(&self) -> CountSequence {
        CountSequence::bracket(&[(self.triangles(), 3), (1, self.l())]).expect("sizes >= 3")
    }

    /// The valence step `[4]`.
    pub fn w(&self) -> CountSequence {
        CountSequence::unit(4).expect("4 >= 3")
    }

    pub fn r(&self) -> u32 {
        4
    }
}

/// Grows every marker of `e`'s patch `steps` times, in marker order.
fn grow_expansion(mut e: ExpansionPatch, steps: usize) -> Result<ExpansionPatch, PipelineError> {
    for i in 0..e.patch().markers().len() {
        let g = grow_at(e.patch(), i, steps)?;
        e = e.after_growth(&g)?;
    }
    Ok(e)
}

fn grow_plain(mut p: Patch, steps: usize) -> Result<Patch, PipelineError> {
    for i in 0..p.markers().len() {
        p = grow_at(&p, i, steps)?.patch;
    }
    Ok(p)
}

/// Patches for a family: the one used for intermediate passes, the one used
/// for the final pass, and the 4-gon filler when the family ships one.
pub struct FamilyPatches {
    pub intermediate: ExpansionPatch,
    pub last: ExpansionPatch,
    pub four_gon: Option<Patch>,
}

impl FamilySpec {
    pub fn patches(&self) -> Result<FamilyPatches, PipelineError> {
        let k = self.k as usize;
        Ok(match self.family {
            Family::ThreeFive => {
                // square steps add one corner to each target pentagon,
                // diamond and vertex steps three
                let pn = grow_expansion(catalog::get_expansion_patch("PN35")?, 3 * k)?;
                let pf = grow_plain(catalog::get_plain_patch("PF35")?, k)?;
                FamilyPatches { intermediate: pn.clone(), last: pn, four_gon: Some(pf) }
            }
            Family::ThreeSeven => FamilyPatches {
                intermediate: grow_expansion(catalog::get_expansion_patch("PN37")?, k)?,
                last: grow_expansion(catalog::get_expansion_patch("PN35")?, 3 * k + 2)?,
                four_gon: None,
            },
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct RealizeOptions {
    /// 4-gon filler for the 3:7 family (none ships with the catalog).
    pub pf37: Option<Patch>,
    /// Also run the 3-connectivity check on the result.
    pub check_three_connected: bool,
    pub exec: Exec,
}

#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub spec: FamilySpec,
    pub map: OrientedMap,
    pub seed_p: CountSequence,
    pub seed_v: CountSequence,
    pub result_p: CountSequence,
    pub result_v: CountSequence,
    pub chi: i64,
    /// Seed 4-gons replaced by the 4-gon filler (they leave the census).
    pub replaced_four_gons: u64,
    /// `result_p - (seed_p - replaced 4-gons)`
    pub delta_p: CountSequence,
    pub c: u64,
    pub d: u64,
    pub passes_used: u32,
    pub polyhedral: bool,
    pub three_connected: Option<bool>,
}

/// Expands `seed` `spec.passes` times with grown catalog patches and
/// measures `c`, `d` with `delta p = c q` and `delta v = d [4]`.
pub fn realize_family(seed: &OrientedMap, spec: FamilySpec, opts: &RealizeOptions) -> Result<RealizationReport, PipelineError> {
    let fp = spec.patches()?;
    let four_gon = match spec.family {
        Family::ThreeFive => fp.four_gon.clone(),
        Family::ThreeSeven => opts.pf37.clone(),
    };
    let verdict = has_polyhedral_property(&fp.last, opts.exec)?;
    if !verdict.holds() {
        return Err(PipelineError::FinalPatchLacksProperty(format!("{:?}", verdict.witness)));
    }
    let seed_summary = seed.summary();
    let mut current = seed.clone();
    let mut replaced = 0u64;
    for pass in 0..spec.passes.max(1) {
        let e = if pass + 1 == spec.passes.max(1) { &fp.last } else { &fp.intermediate };
        let fours = (0..current.num_faces()).filter(|&f| current.face_size(f) == 4).count() as u64;
        if fours > 0 {
            if four_gon.is_none() {
                return Err(PipelineError::MissingPF37);
            }
            replaced += fours;
        }
        current = expand_with_rings(&current, e, four_gon.as_ref(), opts.exec)?.map;
    }
    check_polyhedral(&current, opts.exec)?;
    let summary = current.summary();
    let base = seed_summary
        .p_vector
        .checked_sub(&CountSequence::bracket(&[(replaced, 4)]).expect("4 >= 3"))
        .expect("replaced 4-gons were in the seed");
    let not_prop = |delta: String| PipelineError::NotProportional { delta, q: spec.q().to_string() };
    let delta_p = summary.p_vector.checked_sub(&base).ok_or_else(|| not_prop("negative".into()))?;
    let c = delta_p.integer_multiple_of(&spec.q()).filter(|&c| c > 0).ok_or_else(|| not_prop(delta_p.to_string()))?;
    let d = (summary.num_vertices - seed_summary.num_vertices) as u64;
    let three_connected = opts.check_three_connected.then(|| verify::is_three_connected(&current, opts.exec));
    Ok(RealizationReport {
        spec,
        seed_p: seed_summary.p_vector,
        seed_v: seed_summary.v_vector,
        result_p: summary.p_vector,
        result_v: summary.v_vector,
        chi: summary.euler_characteristic,
        replaced_four_gons: replaced,
        delta_p,
        c,
        d,
        passes_used: spec.passes.max(1),
        polyhedral: true,
        three_connected,
        map: current,
    })
}

impl fmt::Display for RealizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {}", self.spec.family)?;
        writeln!(f, "k {}", self.spec.k)?;
        writeln!(f, "l {}", self.spec.l())?;
        writeln!(f, "q {}", self.spec.q())?;
        writeln!(f, "passes {}", self.passes_used)?;
        writeln!(f, "seed_p {}", self.seed_p)?;
        writeln!(f, "seed_v {}", self.seed_v)?;
        writeln!(f, "result_p {}", self.result_p)?;
        writeln!(f, "result_v {}", self.result_v)?;
        writeln!(f, "euler_characteristic {}", self.chi)?;
        writeln!(f, "replaced_four_gons {}", self.replaced_four_gons)?;
        writeln!(f, "delta_p {}", self.delta_p)?;
        writeln!(f, "c {}", self.c)?;
        writeln!(f, "d {}", self.d)?;
        writeln!(f, "polyhedral {}", self.polyhedral)?;
        match self.three_connected {
            Some(t) => writeln!(f, "three_connected {t}"),
            None => writeln!(f, "three_connected unchecked"),
        }
    }
}
