use matpw::propcheck::{check_lemma, default_pool, search_hypothesis_instances, LemmaId};

fn main() -> matpw::Result<()> {
    for lemma in LemmaId::ALL {
        let pool = default_pool(lemma, 1);
        let found = search_hypothesis_instances(lemma, &pool, 300, 2)?;
        let held = found
            .instances
            .iter()
            .map(check_lemma)
            .filter(|r| r.as_ref().is_ok_and(|r| r.conclusion_held == Some(true)))
            .count();
        println!(
            "{lemma:<12} {:>3}/{} instances met the hypotheses ({:.1}%), conclusion held on {held}",
            found.instances.len(),
            found.attempts,
            100.0 * found.hit_rate()
        );
    }
    Ok(())
}
