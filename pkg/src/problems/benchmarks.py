"""Published benchmark rows and the wavefunction figure catalogue.

Energies are kept as decimal strings so they compare digit for digit with
computed values.
"""

from pydantic import BaseModel, ConfigDict


class PublishedRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: str
    state: str
    mass: str
    e_wkb: str
    e_qlm1: str
    e_qlm: str
    iterations: int
    e_exact: str
    d1: str
    d2: str


def _row(problem: str, state: str, mass: str, *values: str) -> PublishedRow:
    e_wkb, e_qlm1, e_qlm, k, e_exact, d1, d2 = values
    return PublishedRow(
        problem=problem,
        state=state,
        mass=mass,
        e_wkb=e_wkb,
        e_qlm1=e_qlm1,
        e_qlm=e_qlm,
        iterations=int(k),
        e_exact=e_exact,
        d1=d1,
        d2=d2,
    )


TABLE: tuple[PublishedRow, ...] = (
    _row("breitcoulomb", "(1,0,0,0)", "1", "0.999986679987", "0.999993335480",
         "0.99999334014853888012", "6", "0.99999334014853888016", "7e-4", "5e-7"),
    _row("breitcoulomb", "(2,0,0,0)", "1", "0.999996670008", "0.999998335239",
         "0.99999833502466540218", "7", "0.99999833502466540223", "2e-4", "-2e-8"),
    _row("breitcoulomb", "(1,1,0,1)", "1", "0.999996670037", "0.999998335831",
         "0.99999833501727839123", "44", "0.99999833501727839122", "2e-4", "-8e-8"),
    _row("breitcoulomb", "(2,1,0,1)", "1", "0.999998520016", "0.999999260060",
         "0.99999926000774772931", "47", "0.99999926000774772931", "7e-5", "-1e-8"),
    _row("log", "1s", "1/2", "1.05346726985", "1.044738",
         "1.04433226746060809298", "5", "1.04433226746060809380", "-0.88", "-0.039"),
    _row("log", "2s", "1/2", "1.850802588", "1.8475",
         "1.84744258030447816386", "5", "1.84744258030447816385", "-0.18", "-0.003"),
    _row("log", "3s", "1/2", "2.299218712", "2.289659",
         "2.28961571419653762102", "5", "2.28961571419653762102", "-0.42", "-0.002"),
    _row("anharmonic5", "1s", "1", "1.9515942", "2.045279",
         "2.04457965744735563534", "6", "2.04457965744735563536", "4.5", "-0.03"),
    _row("anharmonic5", "2s", "1", "6.656623", "6.713952",
         "6.71354650144525311020", "6", "6.71354650144525311053", "0.85", "-0.006"),
    _row("anharmonic5", "3s", "1", "12.72396", "12.76796",
         "12.7678665411805352297", "6", "12.7678665411805352289", "0.34", "-0.001"),
    _row("woodsaxon", "1s", "1", "-17.61192", "-17.5432",
         "-17.5597967410317970585", "5", "-17.5597967410317970589", "-0.30", "0.095"),
    _row("woodsaxon", "2s", "1", "-7.190505", "-7.37920",
         "-7.37854164337449079226", "5", "-7.37854164337449079262", "2.5", "-0.009"),
    _row("woodsaxon", "3s", "1", "-0.029269", "-0.105156",
         "-0.10819568493119384889", "6", "-0.10819568493119384933", "72.9", "2.8"),
    _row("doublewell", "1s+", "1", "0.484067", "0.483017",
         "0.48295865991331554844", "6", "0.48295865991331554820", "-0.98", "-0.009"),
    _row("doublewell", "1s-", "1", "0.49734197", "0.484218",
         "0.48314820684089227025", "6", "0.48314820684089227025", "-2.9", "-0.22"),
    _row("doublewell", "2s-", "1", "1.39372888", "1.373747",
         "1.37363583606219407956", "6", "1.37363583606219407958", "-1.5", "-0.008"),
    _row("doublewell", "3s-", "1", "2.17217337", "2.178319",
         "2.17745782251542955262", "6", "2.17745782251542955243", "0.24", "-0.040"),
)

LARGE_N_DOUBLEWELL_GROUND = "0.48305"
"""Ground-state energy of the double well quoted from the 1/N expansion."""

FIGURES: dict[str, tuple[str, str]] = {
    "1": ("anharmonic5", "1s"),
    "2": ("anharmonic5", "1s"),
    "3": ("anharmonic5", "2s"),
    "1a": ("breitcoulomb", "(1,0,0,0)"),
    "2a": ("breitcoulomb", "(1,0,0,0)"),
    "1b": ("breitcoulomb", "(2,0,0,0)"),
    "2b": ("breitcoulomb", "(1,1,0,1)"),
    "3b": ("breitcoulomb", "(2,1,0,1)"),
    "4": ("log", "1s"),
    "5": ("log", "1s"),
    "6": ("woodsaxon", "1s"),
    "7": ("woodsaxon", "1s"),
    "8": ("woodsaxon", "2s"),
    "9": ("doublewell", "1s+"),
    "10": ("doublewell", "1s+"),
    "11": ("doublewell", "1s-"),
    "12": ("doublewell", "1s-"),
}


def published(problem: str, state: str) -> PublishedRow | None:
    for row in TABLE:
        if row.problem == problem and row.state == state:
            return row
    return None
