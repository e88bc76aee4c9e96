"""Local read-only JSON service backing the diagram viewer.

One filtration per process.  Reduction, forest, and volume results are
memoized; concurrent requests for the same key share a single computation
through a per-key future.  CORS is wide open since the service binds to
localhost and never mutates anything.
"""
from __future__ import annotations

import json
import logging
import mimetypes
import threading
from concurrent.futures import Future
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import mergetree, reduction, volumes
from .simplicial import Filtration

log = logging.getLogger("volopt.service")


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


class Session:
    """Memoized query layer over one immutable filtration."""

    def __init__(self, f: Filtration):
        self.filtration = f
        self._lock = threading.Lock()
        self._futures: dict = {}

    def _memo(self, key, compute):
        with self._lock:
            fut = self._futures.get(key)
            if fut is None:
                fut = Future()
                self._futures[key] = fut
                owner = True
            else:
                owner = False
        if owner:
            try:
                fut.set_result(compute())
            except BaseException as e:  # propagate to all waiters
                fut.set_exception(e)
        return fut.result()

    @property
    def reduced(self) -> reduction.ReducedMatrices:
        return self._memo("reduced", lambda: reduction.reduce(self.filtration))

    @property
    def forest(self) -> mergetree.PersistenceForest:
        def build():
            problems = mergetree.sweep_condition_report(self.filtration)
            if problems:
                raise ServiceError(422, "persistence tree unavailable: " + problems[0])
            return mergetree.compute_forest(self.filtration)
        return self._memo("forest", build)

    def meta(self) -> dict:
        f = self.filtration
        return {
            "ambient_dim": f.ambient_dim,
            "size": len(f),
            "counts": {str(q): int((f.dims == q).sum()) for q in range(f.max_dim() + 1)},
            "has_coordinates": f.vertex_coords is not None,
            "has_weights": f.vertex_weights is not None,
            "degrees": list(range(max(f.max_dim(), 1))),
        }

    def diagram(self, degree: int, include_zero: bool = False) -> dict:
        if degree < 0:
            raise ServiceError(400, "degree must be non-negative")
        key = ("diagram", degree, include_zero)
        return self._memo(key, lambda: reduction.diagram_json(
            self.filtration, degree, self.reduced, include_zero=include_zero))

    def volume(self, death_index: int | None, radius: float | None = None,
               birth_index: int | None = None) -> dict:
        f = self.filtration
        if death_index is not None:
            if not isinstance(death_index, int) or not 1 <= death_index <= len(f):
                raise ServiceError(400, f"death_index must be in 1..{len(f)}")
            try:
                pair = reduction.find_pair(f, self.reduced, death_index)
            except KeyError as e:
                raise ServiceError(400, str(e))
        else:
            if not isinstance(birth_index, int) or not 1 <= birth_index <= len(f):
                raise ServiceError(400, f"birth_index must be in 1..{len(f)}")
            pair = None
            q = f.dim(birth_index)
            for p in reduction.diagram(f, q, self.reduced, include_zero=True):
                if p.birth_index == birth_index:
                    pair = p
                    break
            if pair is None:
                raise ServiceError(400, f"no pair born at index {birth_index}")
        key = ("volume", pair.birth_index, pair.death_index, radius)

        def compute():
            full = reduction.diagram(f, pair.degree, self.reduced, include_zero=True)
            try:
                ov = volumes.optimal_volume(f, pair, radius=radius, full_diagram=full)
            except volumes.UnsupportedPairError as e:
                raise ServiceError(422, str(e))
            except ValueError as e:
                raise ServiceError(400, str(e))
            return ov.to_json(f)

        return self._memo(key, compute)

    def tree(self) -> dict:
        return self._memo("tree", lambda: self.forest.to_json(include_zero=True))

    def points(self) -> dict:
        f = self.filtration
        if f.vertex_coords is None:
            return {"points": {}}
        out = {str(v): list(c) for v, c in f.vertex_coords.items()}
        weights = {str(v): w for v, w in (f.vertex_weights or {}).items()}
        return {"points": out, "weights": weights, "ambient_dim": f.ambient_dim}


def make_handler(session: Session, ui_dir: str | None):
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            log.debug("%s " + fmt, self.address_string(), *args)

        def _send(self, status: int, payload, content_type="application/json"):
            body = payload if isinstance(payload, bytes) else \
                json.dumps(payload, sort_keys=True).encode()
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def _error(self, status: int, message: str):
            self._send(status, {"error": message})

        def do_OPTIONS(self):
            self._send(204, b"")

        def do_GET(self):
            url = urlparse(self.path)
            qs = parse_qs(url.query)
            try:
                if url.path == "/meta":
                    self._send(200, session.meta())
                elif url.path == "/diagram":
                    if "degree" not in qs:
                        raise ServiceError(400, "missing degree parameter")
                    try:
                        degree = int(qs["degree"][0])
                    except ValueError:
                        raise ServiceError(400, "degree must be an integer")
                    include_zero = qs.get("include_zero", ["0"])[0] in ("1", "true")
                    self._send(200, session.diagram(degree, include_zero))
                elif url.path == "/tree":
                    self._send(200, session.tree())
                elif url.path == "/points":
                    self._send(200, session.points())
                elif url.path == "/" or url.path.startswith("/ui"):
                    self._serve_ui(url.path)
                else:
                    self._error(404, f"unknown endpoint {url.path}")
            except ServiceError as e:
                self._error(e.status, str(e))
            except BrokenPipeError:
                pass
            except Exception as e:  # noqa: BLE001 - service must not die
                log.exception("request failed")
                self._error(500, f"internal error: {e}")

        def do_POST(self):
            url = urlparse(self.path)
            try:
                if url.path != "/volume":
                    raise ServiceError(404, f"unknown endpoint {url.path}")
                length = int(self.headers.get("Content-Length", "0"))
                try:
                    payload = json.loads(self.rfile.read(length) or b"{}")
                except json.JSONDecodeError:
                    raise ServiceError(400, "request body is not valid JSON")
                if not isinstance(payload, dict) or \
                        ("death_index" not in payload and "birth_index" not in payload):
                    raise ServiceError(400, "body must be {death_index | birth_index, radius?}")
                death_index = payload.get("death_index")
                birth_index = payload.get("birth_index")
                if death_index is not None and not isinstance(death_index, int):
                    raise ServiceError(400, "death_index must be an integer")
                if death_index is None and not isinstance(birth_index, int):
                    raise ServiceError(400, "birth_index must be an integer")
                radius = payload.get("radius")
                if radius is not None and not isinstance(radius, (int, float)):
                    raise ServiceError(400, "radius must be a number")
                self._send(200, session.volume(death_index, radius, birth_index))
            except ServiceError as e:
                self._error(e.status, str(e))
            except Exception as e:  # noqa: BLE001
                log.exception("request failed")
                self._error(500, f"internal error: {e}")

        def _serve_ui(self, path: str):
            if ui_root is None:
                raise ServiceError(404, "no viewer bundled (start with --ui-dir)")
            rel = path[3:] if path.startswith("/ui") else path
            rel = rel.lstrip("/") or "index.html"
            target = (ui_root / rel).resolve()
            if not str(target).startswith(str(ui_root)) or not target.is_file():
                raise ServiceError(404, f"no such file {rel}")
            ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            self._send(200, target.read_bytes(), content_type=ctype)

    return Handler


def make_server(f: Filtration, host="127.0.0.1", port=0, ui_dir=None) -> ThreadingHTTPServer:
    session = Session(f)
    server = ThreadingHTTPServer((host, port), make_handler(session, ui_dir))
    server.daemon_threads = True
    return server


def serve(f: Filtration, host="127.0.0.1", port=8793, ui_dir=None) -> None:
    server = make_server(f, host, port, ui_dir)
    print(f"serving on http://{host}:{server.server_address[1]}  (ctrl-c to stop)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
