/** Deterministic sweep-CSV fixture: 2 cultures x 3 measures x 4 rules x 2 behaviours. */

export const FIXTURE_CULTURES = ["ic", "mallows_0.5"];
export const FIXTURE_MEASURES = ["borda", "rawls", "nash"];
export const FIXTURE_RULES = ["borda", "plurality", "geometric_0.5", "nash"];
export const FIXTURE_BEHAVIOURS = ["sincere", "manipulator"];
export const FIXTURE_M_VALUES = [4, 6, 8, 10, 12];

export interface FixtureRow {
    culture: string;
    rule: string;
    behaviour: string;
    measure: string;
    n: number;
    m: number;
    mean: string;
    stderr: string;
}

function pseudoMean(parts: string, m: number): number {
    let hash = 2166136261;
    for (const ch of parts + m) {
        hash = ((hash ^ ch.charCodeAt(0)) * 16777619) >>> 0;
    }
    return (hash % 9000) / 100 + 5; // in (5, 95)
}

export function fixtureRows(): FixtureRow[] {
    const rows: FixtureRow[] = [];
    for (const culture of FIXTURE_CULTURES) {
        for (const rule of FIXTURE_RULES) {
            for (const behaviour of FIXTURE_BEHAVIOURS) {
                for (const measure of FIXTURE_MEASURES) {
                    for (const m of FIXTURE_M_VALUES) {
                        rows.push({
                            culture, rule, behaviour, measure, n: 10, m,
                            mean: pseudoMean(culture + rule + behaviour + measure, m).toFixed(6),
                            stderr: (pseudoMean(rule + measure, m) / 100).toFixed(6),
                        });
                    }
                }
            }
        }
    }
    // same stable order as the producer: sorted by every key column
    rows.sort((a, b) =>
        a.culture.localeCompare(b.culture) ||
        a.rule.localeCompare(b.rule) ||
        a.behaviour.localeCompare(b.behaviour) ||
        a.measure.localeCompare(b.measure) ||
        a.n - b.n ||
        a.m - b.m,
    );
    return rows;
}

export function fixtureCsv(): string {
    const header = "culture,rule,behaviour,measure,n,m,mean,stderr,trials,seed";
    const lines = fixtureRows().map(
        (r) => `${r.culture},${r.rule},${r.behaviour},${r.measure},${r.n},${r.m},${r.mean},${r.stderr},2000,7`,
    );
    return header + "\n" + lines.join("\n") + "\n";
}
