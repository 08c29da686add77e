"""Regenerate the observation fixtures shipped in ``src/fsmid/data``."""

from pathlib import Path

from fsmid.automata import Alphabet
from fsmid.observations import ObservationSet, format_tsv, gen_random_target, sample_observational

DATA = Path(__file__).resolve().parents[1] / "src" / "fsmid" / "data"

# music-box example: two tied "a" rows, one "b" row, columns x, y, z
MUSIC_BOX = {
    "ax": "1", "ay": "0", "az": "1",
    "aax": "1", "aay": "0", "aaz": "1",
    "bx": "0", "by": "1", "bz": "0",
}

BLOWUP_TARGET = dict(n=4, sigma=2, omega=2, seed=7)
BLOWUP_SAMPLE = dict(walks=12, max_len=6, dropout=0.0, seed=1)


def music_box() -> ObservationSet:
    sigma, omega = Alphabet.of("abxyz"), Alphabet.of("01")
    return ObservationSet(sigma, omega, {sigma.parse(w): omega.index(o) for w, o in MUSIC_BOX.items()})


def blowup() -> ObservationSet:
    m = gen_random_target(**BLOWUP_TARGET)
    return sample_observational(m, **BLOWUP_SAMPLE)


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "music_box.tsv").write_text(format_tsv(music_box()), encoding="utf-8")
    (DATA / "blowup.tsv").write_text(format_tsv(blowup()), encoding="utf-8")


if __name__ == "__main__":
    main()
