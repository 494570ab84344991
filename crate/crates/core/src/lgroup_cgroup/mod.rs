//! Twisting elements, the canonical extension `G̃` and the C-group.

mod cgroup;
mod extension;
mod twisting;

use serde_json::{json, Value};

use crate::error::Result;
use crate::json_util;
use crate::root_datum::GroupDatum;

pub use cgroup::{c_group_agreement, c_group_via_quotient, Agreement};
pub use extension::{build_g_tilde, element_e, splittings, verify_chi_maps_to_2theta, ExtensionPackage, Splitting};
pub use twisting::{enumerate_twisting_elements, is_twisting_element, TwistingSearch, MAX_BOX_BOUND};

impl ExtensionPackage {
    pub fn to_json_value(&self) -> Result<Value> {
        let c_group = GroupDatum { datum: self.c_group.dual_datum.clone(), galois: self.c_group.galois.clone() };
        Ok(json!({
            "g_tilde": self.g_tilde.to_json_value()?,
            "c_group": c_group.to_json_value()?,
            "theta": json_util::int_vec(&self.theta),
            "xi": json_util::int_vec(&self.xi),
            "gm_cochar": json_util::int_vec(&self.gm_cochar),
            "projection": json_util::matrix(self.projection.matrix()),
            "e_class": json_util::int_vec(&self.e_class),
        }))
    }
}
