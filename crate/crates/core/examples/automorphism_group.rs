//! Full automorphism groups of Γ_1 and Γ_2 compared with the group G.

use semireg::graphs::gamma;
use semireg::permaut::{automorphism_group, stabilizer_analysis, verify_subgroup_action};

fn main() -> semireg::Result<()> {
    for m in 1..=2 {
        let cg = gamma(m)?;
        let g = cg.graph();
        let aut = automorphism_group(g)?;
        let g_action = verify_subgroup_action(&cg, &cg.group().generators())?;
        let st = stabilizer_analysis(g, &aut, 0)?;
        println!(
            "m = {m}: |Aut| = {}, |G| = {}, vertex stabilizer {}, local action {}, kernel {}",
            aut.order()?,
            g_action.order()?,
            st.stab_order,
            st.local_action_order,
            st.kernel_order
        );
    }
    Ok(())
}
