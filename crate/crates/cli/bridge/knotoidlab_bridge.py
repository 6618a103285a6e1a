#!/usr/bin/env python3
"""JSON-lines geometry worker for knotoidlab, backed by SnapPy.

Run as `python3 knotoidlab_bridge.py` and pass that command to
`knotoidlab --bridge` or KNOTOIDLAB_BRIDGE.
"""

import json
import re
import sys
import warnings

SCHEMA = 1
RETRIES = 40

warnings.filterwarnings("ignore")


def parse_pd(text):
    parts = text.split(";")
    xs = [tuple(int(t) for t in m.split(",")) for m in re.findall(r"X\[([^\]]*)\]", parts[0])]
    comps = []
    for c in parts[1:]:
        c = c.strip()
        if not c:
            continue
        m = re.match(r"comp=(\S+):(\d+)-(\d+)(?:\s+frame=(-?\d+)(?:/(-?\d+))?)?$", c)
        if not m:
            raise ValueError("bad component clause %r" % c)
        frame = None
        if m.group(4) is not None:
            frame = (int(m.group(4)), int(m.group(5) or 1))
        comps.append({"label": m.group(1), "lo": int(m.group(2)), "hi": int(m.group(3)), "frame": frame})
    return xs, comps


def manifold(snappy, text, fillings):
    xs, comps = parse_pd(text)
    frames = {c["label"]: c["frame"] for c in comps}
    for f in fillings or []:
        frames[f["component"]] = (f["p"], f["q"])
    if not xs:
        # crossingless diagrams: only the unknot and unlinks, never hyperbolic
        return None
    link = snappy.Link(xs)
    fills = []
    for comp in link.link_components:
        ce = comp[0]
        label = xs[ce.crossing.label][ce.strand_index]
        owner = next(c for c in comps if c["lo"] <= label <= c["hi"])
        # p/q surgery is p meridians plus q longitudes
        fills.append(frames.get(owner["label"]) or (0, 0))
    m = link.exterior()
    if any(f != (0, 0) for f in fills):
        m.dehn_fill(fills)
        m = m.filled_triangulation()
    return m


def solve(m):
    for _ in range(RETRIES):
        kind = m.solution_type()
        if kind.startswith("all tetrahedra positively"):
            return float(m.volume()), kind
        m.randomize()
    try:
        hp = m.high_precision()
        if hp.solution_type().startswith("all tetrahedra positively"):
            return float(hp.volume()), hp.solution_type()
    except Exception:
        pass
    return None, m.solution_type()


def handle(snappy, req):
    rid = req.get("id")
    task = req.get("task")
    m = manifold(snappy, req["pd"], req.get("fillings"))
    if task == "isometric":
        m2 = manifold(snappy, req["pd2"], None)
        if m is None or m2 is None:
            return {"id": rid, "status": "error", "message": "isometry needs crossings"}
        return {"id": rid, "status": "ok", "isometric": bool(m.is_isometric_to(m2))}
    if m is None:
        return {"id": rid, "status": "nonhyperbolic", "solution_type": "no crossings"}
    vol, kind = solve(m)
    if vol is None:
        return {"id": rid, "status": "nonhyperbolic", "solution_type": kind}
    if task == "volume":
        return {"id": rid, "status": "ok", "volume": vol, "solution_type": kind}
    if task == "cusp_shapes":
        data = []
        for mer, lon in m.cusp_translations():
            mer = complex(mer)
            data.append({"meridian": [mer.real, mer.imag], "longitude": float(abs(complex(lon)))})
        return {"id": rid, "status": "ok", "volume": vol, "solution_type": kind, "cusp_data": data}
    return {"id": rid, "status": "error", "message": "unknown task %r" % task}


def main():
    try:
        import snappy
        engine = "snappy " + snappy.__version__
    except Exception as e:
        snappy = None
        engine = "unavailable: %s" % e
    print(json.dumps({"hello": "knotoidlab-bridge", "schema": SCHEMA, "engine": engine}), flush=True)
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            req = json.loads(line)
        except ValueError as e:
            out = {"id": None, "status": "error", "message": "malformed request: %s" % e}
        else:
            if snappy is None:
                out = {"id": req.get("id"), "status": "error", "message": engine}
            else:
                try:
                    out = handle(snappy, req)
                except Exception as e:
                    out = {"id": req.get("id"), "status": "error", "message": "%s: %s" % (type(e).__name__, e)}
        print(json.dumps(out), flush=True)


if __name__ == "__main__":
    main()
