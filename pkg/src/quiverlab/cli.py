"""Command-line entry points.

Computational subcommands run in-process on JSON files; the ``session``
group is a thin HTTP client for a running ``quiverlab serve`` instance, so
scripted exploration and the browser UI share one backend.
"""

from __future__ import annotations

import json
import sys

import click

from . import jacobian, mutclass, polytree, potentials, quivers, singularity
from .errors import QuiverlabError


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _sniff_quiver(data: dict) -> quivers.Quiver:
    if "quiver" in data:
        return potentials.qp_from_json_dict(data).underlying_quiver()
    return quivers.from_json_dict(data)


def _sniff_qp(data: dict) -> potentials.QP:
    if "quiver" in data:
        return potentials.qp_from_json_dict(data)
    q = quivers.from_json_dict(data)
    return polytree.primitive_qp(q) if polytree.is_cyclically_oriented(q) else potentials.qp_from_quiver(q)


def _sniff_spec(data: dict):
    if "m0" in data:
        return polytree.FloriatedSpec(data["m0"], tuple(tuple(p) for p in data.get("petals", [])))
    if "sizes" in data:
        return polytree.PolygonTreeSpec.from_json_dict(data)
    raise QuiverlabError("expected a polygon-tree spec ({'sizes': ...}) or floriated spec ({'m0': ...})")


def _emit(data, out: str | None):
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@click.group()
def main():
    """Quivers with potentials: mutation, invariants, classification."""


@main.command()
@click.option("--port", "-p", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--persist", type=click.Path(), default=None,
              help="JSON file for session persistence across restarts")
def serve(port: int, host: str, persist: str | None):
    """Run the HTTP session service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(persist_path=persist), host=host, port=port)


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.option("-k", "--vertex", required=True)
@click.option("-o", "--out", type=click.Path(), default=None)
@click.option("--fz", is_flag=True, help="mutate the weighted quiver only (t-rs rule)")
def mutate(path: str, vertex: str, out: str | None, fz: bool):
    """Mutate a quiver or QP at a vertex."""
    data = _load_json(path)
    if fz or "quiver" not in data and "potential" not in data:
        q = _sniff_quiver(data)
        _emit(quivers.fz_mutate(q, vertex).to_json_dict(), out)
    else:
        qp = _sniff_qp(data)
        _emit(potentials.qp_mutate(qp, vertex).to_json_dict(), out)


@main.command(name="jacobian")
@click.argument("path", type=click.Path(exists=True))
@click.option("--max-degree", type=int, default=None)
@click.option("--json", "as_json", is_flag=True, help="machine-readable output only")
def jacobian_cmd(path: str, max_degree: int | None, as_json: bool):
    """Basis, dimension, Cartan matrix and structural flags of J(Q, W)."""
    qp = _sniff_qp(_load_json(path))
    report = jacobian.jacobian_basis(qp, max_degree)
    payload = report.to_json_dict()
    if report.saturated:
        payload["schurian"] = jacobian.is_schurian(report)
        payload["socle_condition"] = jacobian.socle_condition(report)
    if as_json:
        click.echo(json.dumps(payload, indent=2))
        return
    click.echo(f"dimension: {payload['dimension']}  saturated: {payload['saturated']}")
    if report.saturated:
        click.echo(f"schurian: {payload['schurian']}  all cycles zero: {payload['socle_condition']}")
    click.echo("cartan (rows = target, cols = source, order "
               + ", ".join(qp.vertices) + "):")
    for row in payload["cartan"]:
        click.echo("  " + " ".join(str(x) for x in row))



@main.group(name="polygon-tree")
def polygon_tree():
    """Build and check polygon-tree quivers."""


@polygon_tree.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("-o", "--out", type=click.Path(), default=None)
def build(spec_path: str, out: str | None):
    """Build the QP of a polygon-tree or floriated spec."""
    spec = _sniff_spec(_load_json(spec_path))
    if isinstance(spec, polytree.FloriatedSpec):
        qp = polytree.build_floriated(spec)
    else:
        qp = polytree.build_polygon_tree(spec)
    _emit(qp.to_json_dict(), out)


@polygon_tree.command()
@click.argument("path", type=click.Path(exists=True))
def check(path: str):
    """Cyclic-orientation, decomposition and simpleness report."""
    q = _sniff_quiver(_load_json(path))
    payload: dict = {"cyclically_oriented": polytree.is_cyclically_oriented(q)}
    try:
        dec = polytree.decompose(q)
        payload["polygon_tree"] = dec.spec.to_json_dict()
        payload["m_N_dQ"] = list(polytree.d_invariant(dec.spec))
        payload["simple"] = polytree.is_simple(dec.spec)
        payload["type_d_candidate"] = polytree.is_type_d_candidate(dec.spec)
        witness = polytree.banned_witness(dec.spec)
        if witness:
            payload["banned_witness"] = {"form": witness[0], "components": list(witness[1])}
    except QuiverlabError as exc:
        payload["polygon_tree"] = None
        payload["error"] = str(exc)
    click.echo(json.dumps(payload, indent=2))


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.option("--cap", type=int, default=mutclass.DEFAULT_CAP, show_default=True)
def classify(path: str, cap: int):
    """Mutation-class status, named type and representation type."""
    q = _sniff_quiver(_load_json(path))
    report = mutclass.explore_class(q, cap=cap)
    payload: dict = {"status": report.status}
    if report.status == "finite":
        payload["class_size"] = report.size
        payload["type"] = str(mutclass.classify_mutation_type(q, cap=cap))
        try:
            rep = mutclass.representation_type(q, cap=cap)
            payload["representation_type"] = rep.verdict
        except QuiverlabError as exc:
            payload["representation_type"] = None
            payload["note"] = str(exc)
    elif report.status == "infinite":
        payload["witness"] = list(report.witness or ())
        try:
            mutclass.representation_type(q, cap=cap)
        except QuiverlabError:
            pass
        else:
            payload["representation_type"] = "wild"
    else:
        payload["cap"] = report.cap
    click.echo(json.dumps(payload, indent=2))


@main.command(name="explore-class")
@click.argument("path", type=click.Path(exists=True))
@click.option("--cap", type=int, default=mutclass.DEFAULT_CAP, show_default=True)
def explore_class_cmd(path: str, cap: int):
    """BFS the mutation class; emits status, size and codes."""
    q = _sniff_quiver(_load_json(path))
    report = mutclass.explore_class(q, cap=cap)
    payload: dict = {"status": report.status}
    if report.codes is not None:
        payload["size"] = report.size
    if report.witness is not None:
        payload["witness"] = list(report.witness)
    if report.cap is not None:
        payload["cap"] = report.cap
    click.echo(json.dumps(payload, indent=2))


@main.command(name="singularity")
@click.argument("spec_path", type=click.Path(exists=True))
@click.option("--strict", is_flag=True,
              help="also ban three petals on pairwise-adjacent arrows of one host")
def singularity_cmd(spec_path: str, strict: bool):
    """Singularity descriptor N_d of a simple polygon-tree spec."""
    spec = _sniff_spec(_load_json(spec_path))
    desc = singularity.singularity_invariant(spec, strict=strict)
    click.echo(json.dumps(desc.to_json_dict(), indent=2))


@main.command()
@click.argument("spec_path", type=click.Path(exists=True))
@click.option("--trace", "trace_path", type=click.Path(), default=None,
              help="write the full trace with snapshots")
@click.option("--chain", type=click.Choice(["theorem", "reduction"]), default=None,
              help="reduction works on floriated specs only; default picks by spec kind")
def replay(spec_path: str, trace_path: str | None, chain: str | None):
    """Replay a proof chain and report the terminal state."""
    spec = _sniff_spec(_load_json(spec_path))
    if chain is None:
        chain = "reduction" if isinstance(spec, polytree.FloriatedSpec) else "theorem"
    if chain == "reduction":
        if not isinstance(spec, polytree.FloriatedSpec):
            raise click.UsageError("--chain reduction needs a floriated spec")
        trace = singularity.replay_reduction(spec)
    else:
        trace = singularity.replay_theorem_chain(spec)
    if trace_path:
        with open(trace_path, "w") as fh:
            json.dump(trace.to_json_dict(), fh, indent=2)
    click.echo(json.dumps(trace.summary, indent=2))


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.option("--dot", is_flag=True, default=True, help="emit graphviz DOT")
@click.option("-o", "--out", type=click.Path(), default=None)
def render(path: str, dot: bool, out: str | None):
    """Render a quiver or QP as DOT (weight-2 arrows get a label)."""
    q = _sniff_quiver(_load_json(path))
    text = q.to_dot()
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command(name="nakayama")
@click.argument("d", type=int)
def nakayama_cmd(d: int):
    """Indecomposables, stable count and tau period of N_d."""
    click.echo(json.dumps(singularity.nakayama_model(d).to_json_dict(), indent=2))


@main.command(name="warm-cache")
@click.option("--max-family", default="E11", show_default=True,
              type=click.Choice(["E", "ExtE", "E11"]),
              help="largest named family to precompute")
def warm_cache(max_family: str):
    """Precompute the named mutation-class databases into the cache dir."""
    families = [("E", 6), ("E", 7), ("E", 8), ("X", 6), ("X", 7), ("T", 6), ("T", 7)]
    if max_family in ("ExtE", "E11"):
        families += [("ExtE", 6), ("ExtE", 7), ("ExtE", 8)]
    if max_family == "E11":
        families += [("E11", 6), ("E11", 7), ("E11", 8)]
    for fam, n in families:
        tag = mutclass.TypeTag(fam, n)
        codes = mutclass.named_class_codes(tag)
        click.echo(f"{tag}: {len(codes)} classes")


@main.group()
def session():
    """Thin HTTP client for a running quiverlab service."""


def _client(base_url: str):
    import httpx

    return httpx.Client(base_url=base_url, timeout=30.0)


@session.command(name="create")
@click.argument("path", type=click.Path(exists=True))
@click.option("--base-url", default="http://127.0.0.1:8000", show_default=True)
def session_create(path: str, base_url: str):
    """Create a session from a QP or spec JSON file."""
    data = _load_json(path)
    if "quiver" in data:
        body = {"qp": data}
    elif "m0" in data:
        body = {"floriated": data}
    else:
        body = {"spec": data}
    with _client(base_url) as client:
        response = client.post("/sessions", json=body)
        response.raise_for_status()
        click.echo(json.dumps(response.json(), indent=2))


@session.command(name="mutate")
@click.argument("session_id")
@click.argument("vertex")
@click.option("--base-url", default="http://127.0.0.1:8000", show_default=True)
def session_mutate(session_id: str, vertex: str, base_url: str):
    with _client(base_url) as client:
        response = client.post(f"/sessions/{session_id}/mutate", json={"vertex": vertex})
        response.raise_for_status()
        click.echo(json.dumps(response.json(), indent=2))


@session.command(name="undo")
@click.argument("session_id")
@click.option("--base-url", default="http://127.0.0.1:8000", show_default=True)
def session_undo(session_id: str, base_url: str):
    with _client(base_url) as client:
        response = client.post(f"/sessions/{session_id}/undo")
        response.raise_for_status()
        click.echo(json.dumps(response.json(), indent=2))


@session.command(name="show")
@click.argument("session_id")
@click.option("--base-url", default="http://127.0.0.1:8000", show_default=True)
def session_show(session_id: str, base_url: str):
    with _client(base_url) as client:
        response = client.get(f"/sessions/{session_id}")
        response.raise_for_status()
        click.echo(json.dumps(response.json(), indent=2))


def entry() -> None:
    try:
        main(standalone_mode=True)
    except QuiverlabError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    entry()
