//! The check registry and the helpers the individual checks share.

mod adjacency;
mod afpp;
mod connectivity;
mod continuity;
mod homotopy;
mod multivalued;
mod retraction;
mod shy;

use std::collections::HashMap;
use std::sync::Arc;

use crate::adjacency::ProductKind;
use crate::error::Result;
use crate::lattice::{DigitalImage, Point};
use crate::maps::DigitalMap;
use crate::space::Space;
use crate::verifier::{CheckDef, Mode};

use Mode::{Exhaustive as E, Fixture as F, Randomized as R};

macro_rules! check {
    ($id:literal, $mode:expr, $run:path) => {
        CheckDef { id: $id, mode: $mode, run: $run }
    };
}

pub(crate) static REGISTRY: &[CheckDef] = &[
    check!("Prop-2.6", E, adjacency::cartesian_is_np1),
    check!("Rem-2.8", F, adjacency::lex_reaches_far),
    check!("Thm-2.10", E, continuity::continuity_via_connected_sets),
    check!("Thm-2.11", E, continuity::composition),
    check!("Ex-2.12", E, continuity::constants),
    check!("Ex-2.13", E, continuity::identities),
    check!("Prop-2.16", E, homotopy::equivalence_relation),
    check!("Thm-2.19", E, multivalued::connectivity_by_adjacency),
    check!("Thm-2.23", E, multivalued::continuous_preserves_connectivity),
    check!("Thm-2.24", E, multivalued::continuous_point_images),
    check!("Prop-2.25", F, multivalued::one_point_onto_interval),
    check!("Prop-2.27", E, multivalued::preserving_is_weak_plus_connected),
    check!("Ex-2.28", F, multivalued::weak_strong_disconnected_values),
    check!("Ex-2.29", F, multivalued::weak_not_strong),
    check!("Prop-2.30", E, multivalued::strong_connected_preserves),
    check!("Thm-2.32", E, shy::four_conditions),
    check!("Fig-3", F, multivalued::diagonal_subdivision_cut),
    check!("Ex-3.2", E, adjacency::domination_bullets),
    check!("Ex-3.3", F, adjacency::incomparable_tensors),
    check!("Prop-3.4", E, adjacency::domination_transitive),
    check!("Prop-3.5", E, adjacency::domination_monotone),
    check!("Thm-3.7", E, continuity::np_full_iff),
    check!("Thm-3.8", E, continuity::np_isomorphisms),
    check!("Thm-3.9", E, continuity::np_projections),
    check!("Thm-3.10", E, continuity::tensor_adjacent_pairs),
    check!("Def-3.11", E, continuity::injective_is_local),
    check!("Ex-3.12", F, continuity::tensor_id_times_constant),
    check!("Thm-3.13", E, continuity::tensor_product_to_factors),
    check!("Thm-3.14", E, continuity::tensor_local_factors),
    check!("Thm-3.15", E, continuity::tensor_isomorphisms),
    check!("Thm-3.16", E, continuity::tensor_projections),
    check!("Prop-3.17", E, continuity::tensor_injections),
    check!("Thm-3.17", E, continuity::cartesian_iff),
    check!("Thm-3.18", E, continuity::cartesian_projections),
    check!("Prop-3.18", E, continuity::cartesian_injections),
    check!("Thm-3.19", E, continuity::cartesian_isomorphisms),
    check!("Ex-3.20", F, continuity::lex_constant_times_id),
    check!("Thm-3.21", E, continuity::lex_continuity),
    check!("Thm-3.22", E, continuity::lex_isomorphisms),
    check!("Ex-3.23", F, continuity::lex_later_projections),
    check!("Thm-3.24", E, continuity::permuted_isomorphisms),
    check!("Prop-3.25", E, continuity::lex_first_projection),
    check!("Ex-3.26", F, connectivity::lex_asymmetry),
    check!("Thm-4.1", E, connectivity::np_full_connected),
    check!("Thm-4.2", E, connectivity::tensor_connected_factors),
    check!("Ex-4.3", F, connectivity::tensor_square_components),
    check!("Fig-1", F, connectivity::msc8_times_interval),
    check!("Thm-4.4", E, connectivity::cartesian_connected),
    check!("Prop-4.5", E, connectivity::lex_pair_connected),
    check!("Thm-4.6", E, connectivity::lex_connected),
    check!("Ex-5.1", F, homotopy::tensor_homotopy_breaks),
    check!("Ex-5.2", F, homotopy::tensor_type_breaks),
    check!("Thm-5.3", R(200), homotopy::cartesian_homotopy),
    check!("Cor-5.4", E, homotopy::cartesian_equivalence),
    check!("Thm-5.5", E, homotopy::lex_collapse),
    check!("Thm-5.6", F, homotopy::lex_collapse_certificate),
    check!("Cor-5.7", E, homotopy::lex_swap_types),
    check!("Cor-5.8", E, homotopy::lex_transfer),
    check!("Def-6.1", E, retraction::retraction_definition),
    check!("Thm-6.2", E, retraction::np_full_retracts),
    check!("Ex-6.3", F, retraction::tensor_retract_fails),
    check!("Thm-6.4", E, retraction::cartesian_retracts),
    check!("Ex-6.5", F, retraction::lex_retract_fails),
    check!("Def-7.1", F, afpp::interval_has_afpp),
    check!("Thm-7.2", E, afpp::np_afpp_factors),
    check!("Ex-7.3", F, afpp::tensor_square_lacks_afpp),
    check!("Ex-7.4", F, afpp::cartesian_square_lacks_afpp),
    check!("Thm-7.5", E, afpp::lex_afpp_factor),
    check!("Prop-8.1", E, multivalued::single_valued_agree),
    check!("Thm-8.2", E, multivalued::np_weak),
    check!("Thm-8.3", E, multivalued::tensor_weak_factors),
    check!("Ex-8.4", F, multivalued::tensor_weak_example),
    check!("Thm-8.5", E, multivalued::cartesian_weak),
    check!("Thm-8.6", E, multivalued::np_strong),
    check!("Thm-8.7", E, multivalued::tensor_strong_factors),
    check!("Ex-8.8", F, multivalued::tensor_strong_example),
    check!("Thm-8.9", E, multivalued::cartesian_strong),
    check!("Ex-8.10", F, multivalued::lex_product_lacks_both),
    check!("Ex-8.11", F, multivalued::lex_factor_lacks_both),
    check!("Thm-8.12", E, multivalued::cartesian_generated),
    check!("Thm-8.13", E, multivalued::np_multi_retractions),
    check!("Lem-8.14", E, multivalued::refinement),
    check!("Thm-8.15", E, multivalued::np_multi_continuity),
    check!("Thm-8.16", E, multivalued::tensor_local_generators),
    check!("Thm-8.17", E, multivalued::cartesian_multi_retractions),
    check!("Thm-8.18", E, multivalued::np_connectivity),
    check!("Ex-8.19", F, multivalued::tensor_connectivity_example),
    check!("Thm-8.20", E, multivalued::tensor_connectivity_factors),
    check!("Thm-8.21", E, multivalued::cartesian_connectivity),
    check!("Ex-8.22", F, multivalued::lex_connectivity_example),
    check!("Thm-8.23", E, multivalued::lex_local_generators),
    check!("Thm-9.1", E, shy::shy_local_iso),
    check!("Thm-9.1b", E, shy::np_shy),
    check!("Thm-9.2", E, shy::tensor_shy_factors),
    check!("Ex-9.3", F, shy::tensor_shy_example),
    check!("Thm-9.4", E, shy::cartesian_shy),
    check!("Thm-9.5", E, shy::lex_shy),
    check!("Ex-9.6", F, shy::lex_shy_example),
];

pub(super) fn pt(coords: &[i64]) -> Point {
    Point::new(coords.to_vec()).expect("nonempty coordinates")
}

pub(super) fn line(values: &[i64]) -> Arc<Space> {
    Space::line(values).expect("valid line").into_arc()
}

pub(super) fn interval(lo: i64, hi: i64) -> Arc<Space> {
    Space::interval(lo, hi).expect("valid interval").into_arc()
}

pub(super) fn space(points: &[&[i64]], spec: &str) -> Result<Arc<Space>> {
    let image = DigitalImage::new(points.iter().map(|c| pt(c)))?;
    Ok(Space::with_spec(image, spec)?.into_arc())
}

pub(super) fn product(factors: &[&Arc<Space>], kind: ProductKind) -> Result<Arc<Space>> {
    let refs: Vec<&Space> = factors.iter().map(|f| f.as_ref()).collect();
    Ok(Space::product(&refs, kind)?.into_arc())
}

/// Product spaces of pool members, built once per check.
pub(super) struct Products {
    pool: Vec<Arc<Space>>,
    cache: HashMap<(Vec<usize>, ProductKind), Arc<Space>>,
}

impl Products {
    pub fn new(pool: &[Arc<Space>]) -> Self {
        Products { pool: pool.to_vec(), cache: HashMap::new() }
    }

    pub fn get(&mut self, ids: &[usize], kind: ProductKind) -> Arc<Space> {
        let pool = &self.pool;
        self.cache
            .entry((ids.to_vec(), kind))
            .or_insert_with(|| {
                let factors: Vec<&Arc<Space>> = ids.iter().map(|&i| &pool[i]).collect();
                product(&factors, kind).expect("pool products are valid")
            })
            .clone()
    }

    /// The product map of factor maps whose spaces are pool members.
    pub fn map(&mut self, maps: &[&Fm], kind: ProductKind) -> DigitalMap {
        let doms: Vec<usize> = maps.iter().map(|m| m.dom).collect();
        let cods: Vec<usize> = maps.iter().map(|m| m.cod).collect();
        let (d, c) = (self.get(&doms, kind), self.get(&cods, kind));
        let refs: Vec<&DigitalMap> = maps.iter().map(|m| &m.map).collect();
        DigitalMap::product_into(&refs, d, c)
    }
}

/// A map between two pool members, remembering which ones.
pub(super) struct Fm {
    pub dom: usize,
    pub cod: usize,
    pub map: DigitalMap,
}

/// Maps between every ordered pair of pool members.
pub(super) fn pool_maps(pool: &[Arc<Space>], each: impl Fn(&Arc<Space>, &Arc<Space>) -> Vec<DigitalMap>) -> Vec<Fm> {
    let mut out = Vec::new();
    for (i, x) in pool.iter().enumerate() {
        for (j, y) in pool.iter().enumerate() {
            out.extend(each(x, y).into_iter().map(|map| Fm { dom: i, cod: j, map }));
        }
    }
    out
}

pub(super) fn show_map(f: &DigitalMap) -> String {
    format!("{:?} from {:?} to {:?}", f, f.domain(), f.codomain())
}

pub(super) fn show_maps(fs: &[&DigitalMap]) -> String {
    fs.iter().map(|f| show_map(f)).collect::<Vec<_>>().join("; ")
}

/// All tuples of length `v` drawn from `0..n`.
pub(super) fn tuples(n: usize, v: usize) -> impl Iterator<Item = Vec<usize>> {
    use itertools::Itertools;
    (0..v).map(|_| 0..n).multi_cartesian_product()
}
