/**
 * Parsing for the sweep CSV schema:
 * culture,rule,behaviour,measure,n,m,mean,stderr,trials,seed
 *
 * Mean/stderr are kept both as numbers (for geometry) and as the verbatim
 * CSV strings (so rendered series can be checked against the file exactly).
 */

export interface SweepRecord {
    culture: string;
    rule: string;
    behaviour: string;
    measure: string;
    n: number;
    m: number;
    mean: number;
    meanRaw: string;
    stderr: number;
    stderrRaw: string;
    trials: number;
    seed: number;
}

export const REQUIRED_COLUMNS = [
    "culture", "rule", "behaviour", "measure", "n", "m",
    "mean", "stderr", "trials", "seed",
] as const;

export function parseSweepCsv(text: string, source = "<csv>"): SweepRecord[] {
    const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
    if (lines.length === 0) {
        throw new Error(`${source}: empty file (no header)`);
    }
    const header = lines[0].split(",").map((h) => h.trim());
    const index = new Map(header.map((name, i) => [name, i]));
    for (const column of REQUIRED_COLUMNS) {
        if (!index.has(column)) {
            throw new Error(`${source}: missing column '${column}'`);
        }
    }
    const records: SweepRecord[] = [];
    for (let lineno = 1; lineno < lines.length; lineno++) {
        const fields = lines[lineno].split(",");
        if (fields.length !== header.length) {
            throw new Error(
                `${source}:${lineno + 1}: expected ${header.length} fields, got ${fields.length}`,
            );
        }
        const get = (column: string) => fields[index.get(column)!].trim();
        const int = (column: string) => {
            const value = Number(get(column));
            if (!Number.isInteger(value)) {
                throw new Error(`${source}:${lineno + 1}: bad integer in '${column}': ${get(column)}`);
            }
            return value;
        };
        const float = (column: string) => {
            const value = Number(get(column));
            if (!Number.isFinite(value)) {
                throw new Error(`${source}:${lineno + 1}: bad number in '${column}': ${get(column)}`);
            }
            return value;
        };
        records.push({
            culture: get("culture"),
            rule: get("rule"),
            behaviour: get("behaviour"),
            measure: get("measure"),
            n: int("n"),
            m: int("m"),
            mean: float("mean"),
            meanRaw: get("mean"),
            stderr: float("stderr"),
            stderrRaw: get("stderr"),
            trials: int("trials"),
            seed: int("seed"),
        });
    }
    return records;
}
