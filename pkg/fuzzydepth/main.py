from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path
from tempfile import TemporaryDirectory
from typing import Optional

from fastapi import FastAPI, File, Form, HTTPException, UploadFile
from fastapi.responses import Response

from fuzzydepth.cli_io import PlotOptions, load_csv, render_report, render_svg, write_sample_csv
from fuzzydepth.config import get_settings, seed_from_env
from fuzzydepth.depth_engine import median_trapezoid, rank_queries, rank_sample
from fuzzydepth.errors import FuzzyDepthError
from fuzzydepth.fuzzy_core import Sample
from fuzzydepth.runlog import get_logs
from fuzzydepth.stochastics import SimConfig, simulate_trapezoids

app = FastAPI(title="Fuzzy Depth Service", version="1.0.0")


@app.get("/api/settings")
async def api_get_settings():
    try:
        return asdict(get_settings())
    except FuzzyDepthError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/api/depth-logs")
async def api_depth_logs(limit: int = 20):
    return {"items": get_logs(limit=limit)}


@app.post("/api/depth")
async def api_depth(
    sample: UploadFile = File(..., description="Sample CSV"),
    queries: Optional[UploadFile] = File(None, description="Query CSV (optional)"),
    pairs: str = Form(""),
    format: str = Form("json"),
):
    try:
        settings = get_settings()
        mode = pairs.strip() or settings.pairs
        data = await _load_upload(sample)
        if queries is not None and queries.filename:
            report = rank_queries(data, await _load_upload(queries), pairs=mode, workers=settings.workers)
        else:
            report = rank_sample(data, pairs=mode, workers=settings.workers)
        body = render_report(report, format)
    except FuzzyDepthError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    if format == "json":
        return json.loads(body)
    return Response(content=body, media_type="text/csv")


@app.post("/api/median")
async def api_median(sample: UploadFile = File(..., description="Sample CSV")):
    try:
        median = median_trapezoid(await _load_upload(sample))
    except FuzzyDepthError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return {"median": list(median.as_tuple())}


@app.post("/api/simulate")
async def api_simulate(
    n: int = Form(...),
    seed: Optional[int] = Form(None),
    sigma: float = Form(10.0),
    dof: int = Form(1),
):
    try:
        cfg = SimConfig(n=n, seed=seed_from_env(seed), sigma=sigma, dof=dof)
        generated = simulate_trapezoids(cfg)
    except FuzzyDepthError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    with TemporaryDirectory() as tmp_dir:
        output_path = Path(tmp_dir) / "sample.csv"
        write_sample_csv(generated, output_path)
        data = output_path.read_text(encoding="utf-8")
    headers = {
        "Content-Disposition": f'attachment; filename="simulated_n{cfg.n}_seed{cfg.seed}.csv"',
        "X-Sample-Size": str(cfg.n),
        "X-Sample-Seed": str(cfg.seed),
    }
    return Response(content=data, media_type="text/csv", headers=headers)


@app.post("/api/plot")
async def api_plot(
    sample: UploadFile = File(..., description="Sample CSV"),
    top: Optional[int] = Form(None),
    bottom: Optional[int] = Form(None),
    median: bool = Form(False),
    by: str = Form("mS"),
):
    try:
        settings = get_settings()
        data = await _load_upload(sample)
        report = rank_sample(data, pairs=settings.pairs, workers=settings.workers)
        options = PlotOptions(
            top_k=settings.top_k if top is None else top,
            bottom_k=settings.bottom_k if bottom is None else bottom,
            highlight_median=median,
            functional=by,
        )
        svg = render_svg(data, report, options)
    except FuzzyDepthError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return Response(content=svg, media_type="image/svg+xml")


async def _save_upload(upload_file: UploadFile, destination: Path) -> None:
    payload = await upload_file.read()
    destination.write_bytes(payload)


async def _load_upload(upload_file: UploadFile) -> Sample:
    with TemporaryDirectory() as tmp_dir:
        upload_path = Path(tmp_dir) / "upload.csv"
        await _save_upload(upload_file, upload_path)
        return load_csv(upload_path)
