"""
Formatos de archivo: matrices BARYMAT1, manifiestos de pool, bundles de alineamiento y reportes

Todas las escrituras son atómicas (archivo o directorio temporal + rename).
"""

import csv
import io
import json
import logging
import os
import shutil
import struct
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..models import (
    GENERATOR_NAME,
    AlignmentModel,
    ConsistencyReport,
    EvalReport,
    ModelPool,
    ProjectedPool,
    ReprMatrix,
    SynthSpec,
    SyntheticGroundTruth,
    TrainTrace,
    TrainingMeta,
)
from ..utils.exceptions import (
    BadMagic,
    IoFailure,
    ManifestParse,
    MismatchedStimuli,
    MissingFile,
    ParseFailure,
    TruncatedPayload,
    ValidationError,
    VersionUnsupported,
)
from .pool_service import build_pool, pad_pool

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MATRIX_MAGIC = b"BARYMAT1"
MATRIX_VERSION = 1
MATRIX_HEADER = struct.Struct("<8sHQQ")

POOL_FORMAT = "baryalign-pool"
BUNDLE_FORMAT = "baryalign-bundle"
GROUND_TRUTH_FORMAT = "baryalign-ground-truth"
MANIFEST_VERSION = 1
CONSISTENCY_FORMAT = "baryalign-consistency"
EVAL_FORMAT = "baryalign-eval"
REPORT_VERSION = 1

FORMAT_VERSIONS = {
    "matrix": f"BARYMAT1 v{MATRIX_VERSION}",
    "pool_manifest": f"{POOL_FORMAT} v{MANIFEST_VERSION}",
    "bundle": f"{BUNDLE_FORMAT} v{MANIFEST_VERSION}",
    "consistency_report": f"{CONSISTENCY_FORMAT} v{REPORT_VERSION}",
    "eval_report": f"{EVAL_FORMAT} v{REPORT_VERSION}",
}


# ---------------------------------------------------------------------------
# Escritura atómica

def _atomic_write_bytes(path: PathLike, payload: bytes) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(payload)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as e:
        raise IoFailure(f"No se pudo escribir {path}: {e}") from e


def _atomic_write_text(path: PathLike, text: str) -> None:
    _atomic_write_bytes(path, text.encode("utf-8"))


@contextmanager
def atomic_directory(target: PathLike) -> Iterator[Path]:
    """
    Preparar un directorio en una ubicación temporal y moverlo a `target` al terminar

    Si algo falla no queda ningún directorio parcial; si `target` existía se
    reemplaza solo tras el éxito.
    """
    target = Path(target)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix=f".{target.name}.", dir=target.parent))
        os.chmod(staging, 0o755)
    except OSError as e:
        raise IoFailure(f"No se pudo preparar {target}: {e}") from e

    try:
        yield staging
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise

    backup = None
    try:
        if target.exists():
            backup = target.with_name(f".{target.name}.bak-{os.getpid()}")
            os.replace(target, backup)
        os.replace(staging, target)
    except OSError as e:
        shutil.rmtree(staging, ignore_errors=True)
        raise IoFailure(f"No se pudo mover el resultado a {target}: {e}") from e
    if backup is not None:
        shutil.rmtree(backup, ignore_errors=True)


def _read_bytes(path: PathLike) -> bytes:
    path = Path(path)
    try:
        return path.read_bytes()
    except FileNotFoundError as e:
        raise MissingFile(f"Archivo no encontrado: {path}") from e
    except OSError as e:
        raise IoFailure(f"No se pudo leer {path}: {e}") from e


def _read_text(path: PathLike) -> str:
    try:
        return _read_bytes(path).decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseFailure(f"{path}: no es UTF-8 válido") from e


def _format_float(value: float) -> str:
    # representación más corta que recupera el mismo double (<= 17 dígitos)
    return repr(float(value))


# ---------------------------------------------------------------------------
# Matrices

def encode_matrix(matrix: np.ndarray) -> bytes:
    """Cabecera BARYMAT1 + payload float64 little-endian en orden row-major"""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValidationError(f"Solo se serializan matrices 2D, dimensión {matrix.ndim}")
    rows, cols = matrix.shape
    header = MATRIX_HEADER.pack(MATRIX_MAGIC, MATRIX_VERSION, rows, cols)
    return header + np.ascontiguousarray(matrix, dtype="<f8").tobytes(order="C")


def decode_matrix(payload: bytes, source: str = "<bytes>") -> np.ndarray:
    """Inverso de encode_matrix"""
    if payload[:len(MATRIX_MAGIC)] != MATRIX_MAGIC:
        raise BadMagic(f"{source}: bytes mágicos incorrectos")
    if len(payload) < MATRIX_HEADER.size:
        raise TruncatedPayload(f"{source}: cabecera incompleta")

    _, version, rows, cols = MATRIX_HEADER.unpack_from(payload)
    if version != MATRIX_VERSION:
        raise VersionUnsupported(f"{source}: versión {version} no soportada")

    body = payload[MATRIX_HEADER.size:]
    expected = rows * cols * 8
    if len(body) != expected:
        raise TruncatedPayload(
            f"{source}: payload de {len(body)} bytes, esperado {expected} ({rows}x{cols})"
        )
    return np.frombuffer(body, dtype="<f8").reshape(rows, cols).astype(np.float64)


def save_matrix(path: PathLike, matrix: np.ndarray) -> None:
    """Guardar matriz en formato BARYMAT1"""
    _atomic_write_bytes(path, encode_matrix(matrix))
    logger.debug(f"Matriz {np.shape(matrix)} guardada en {path}")


def load_matrix(path: PathLike) -> np.ndarray:
    """Cargar matriz BARYMAT1"""
    return decode_matrix(_read_bytes(path), source=str(path))


def load_csv_matrix(path: PathLike) -> Tuple[Tuple[str, ...], np.ndarray]:
    """
    Cargar matriz CSV: cabecera con columna de estímulo y columnas de features

    Returns: (stimulus_ids, matriz)
    """
    text = _read_text(path)
    rows = [row for row in csv.reader(text.splitlines()) if row]
    if len(rows) < 2:
        raise ManifestParse(f"{path}: CSV sin filas de datos")

    width = len(rows[0]) - 1
    if width < 1:
        raise ManifestParse(f"{path}: la cabecera no tiene columnas de features")

    ids = []
    values = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != width + 1:
            raise ManifestParse(f"{path}:{line}: {len(row)} columnas, esperado {width + 1}")
        ids.append(row[0].strip())
        try:
            values.append([float(v) for v in row[1:]])
        except ValueError as e:
            raise ManifestParse(f"{path}:{line}: valor no numérico ({e})") from e
    return tuple(ids), np.array(values, dtype=np.float64)


def save_csv_matrix(path: PathLike, stimulus_ids: Sequence[str], matrix: np.ndarray) -> None:
    """Guardar matriz CSV sin pérdida de precisión"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["stimulus_id"] + [f"f{j}" for j in range(matrix.shape[1])])
    for stimulus_id, row in zip(stimulus_ids, matrix):
        writer.writerow([stimulus_id] + [_format_float(v) for v in row])
    _atomic_write_text(path, buffer.getvalue())


# ---------------------------------------------------------------------------
# Pools

def _load_json(path: PathLike) -> dict:
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ManifestParse(f"{path}: JSON inválido ({e})") from e
    if not isinstance(data, dict):
        raise ManifestParse(f"{path}: se esperaba un objeto JSON")
    return data


def _dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _read_stimulus_ids(path: Path) -> Tuple[str, ...]:
    lines = _read_text(path).split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return tuple(line.rstrip("\r") for line in lines)


def _resolve(base: Path, value: str) -> Path:
    path = Path(value)
    return path if path.is_absolute() else base / path


def load_pool(manifest_path: PathLike, name: Optional[str] = None) -> ModelPool:
    """
    Cargar y validar un pool desde su manifiesto JSON

    Los miembros pueden ser BARYMAT1 o CSV; el orden del manifiesto es el del pool.
    """
    manifest_path = Path(manifest_path)
    manifest = _load_json(manifest_path)
    base = manifest_path.parent

    try:
        members_spec = manifest["members"]
        stimulus_file = manifest["stimulus_ids"]
    except KeyError as e:
        raise ManifestParse(f"{manifest_path}: falta la clave {e}") from e
    if not isinstance(members_spec, list) or not members_spec:
        raise ManifestParse(f"{manifest_path}: 'members' debe ser una lista no vacía")

    shared_ids = _read_stimulus_ids(_resolve(base, stimulus_file))

    members = []
    for position, entry in enumerate(members_spec):
        if not isinstance(entry, dict) or "model_id" not in entry or "path" not in entry:
            raise ManifestParse(f"{manifest_path}: miembro {position} sin model_id/path")

        model_id = str(entry["model_id"])
        matrix_path = _resolve(base, entry["path"])
        ids = shared_ids
        if entry.get("stimulus_ids"):
            ids = _read_stimulus_ids(_resolve(base, entry["stimulus_ids"]))

        if matrix_path.suffix.lower() == ".csv":
            csv_ids, data = load_csv_matrix(matrix_path)
            if csv_ids != ids:
                raise MismatchedStimuli(f"{model_id}: los ids del CSV no coinciden con el archivo de estímulos")
        else:
            data = load_matrix(matrix_path)

        if data.shape[0] != len(ids):
            raise MismatchedStimuli(
                f"{model_id}: {data.shape[0]} filas para {len(ids)} stimulus_ids"
            )
        original_width = entry.get("original_width")
        if original_width is not None and int(original_width) != data.shape[1]:
            raise ManifestParse(
                f"{model_id}: original_width {original_width} distinto del ancho del archivo {data.shape[1]}"
            )
        members.append(ReprMatrix(model_id=model_id, stimulus_ids=ids, data=data))

    pool = build_pool(members, name=name or str(manifest.get("name", manifest_path.stem)))

    declared = manifest.get("common_width")
    if declared is not None:
        declared = int(declared)
        if declared < pool.common_width:
            raise ManifestParse(
                f"{manifest_path}: common_width {declared} menor que el ancho máximo {pool.common_width}"
            )
        if declared > pool.common_width:
            pool = ModelPool(members=tuple(pad_pool(pool.members, declared)), common_width=declared, name=pool.name)

    logger.info(f"Pool cargado desde {manifest_path}: {', '.join(pool.model_ids)}")
    return pool


def _write_pool_files(
    directory: Path,
    name: str,
    stimulus_ids: Sequence[str],
    entries: List[Tuple[str, np.ndarray, int]],
    common_width: int,
    fmt: str,
    extra: Optional[dict] = None,
) -> Path:
    _atomic_write_text(directory / "stimuli.txt", "".join(f"{s}\n" for s in stimulus_ids))
    members = []
    for model_id, matrix, original_width in entries:
        if fmt == "csv":
            relative = f"members/{model_id}.csv"
            save_csv_matrix(directory / relative, stimulus_ids, matrix)
        else:
            relative = f"members/{model_id}.barymat"
            save_matrix(directory / relative, matrix)
        members.append({"model_id": model_id, "path": relative, "original_width": original_width})

    manifest = {
        "format": POOL_FORMAT,
        "version": MANIFEST_VERSION,
        "name": name,
        "stimulus_ids": "stimuli.txt",
        "common_width": common_width,
        "members": members,
    }
    if extra:
        manifest.update(extra)
    manifest_path = directory / "manifest.json"
    _atomic_write_text(manifest_path, _dump_json(manifest))
    return manifest_path


def save_pool(pool: ModelPool, directory: PathLike, fmt: str = "binary") -> Path:
    """Guardar un pool (matrices sin relleno + estímulos + manifiesto); devuelve la ruta del manifiesto"""
    if fmt not in ("binary", "csv"):
        raise ValidationError(f"Formato de pool no soportado: {fmt}")
    target = Path(directory)
    entries = [(m.model_id, m.raw, m.original_width) for m in pool.members]
    with atomic_directory(target) as staging:
        _write_pool_files(staging, pool.name, pool.stimulus_ids, entries, pool.common_width, fmt)
    return target / "manifest.json"


def save_projected(projected: ProjectedPool, directory: PathLike) -> Path:
    """Guardar un pool proyectado: una matriz por modelo y su manifiesto"""
    target = Path(directory)
    entries = [(i, m, projected.width) for i, m in zip(projected.model_ids, projected.members)]
    with atomic_directory(target) as staging:
        _write_pool_files(
            staging, "projected", projected.stimulus_ids, entries, projected.width, "binary",
            extra={"kind": "projected"},
        )
    return target / "manifest.json"


def load_projected(manifest_path: PathLike) -> ProjectedPool:
    """Cargar un pool proyectado desde su manifiesto"""
    pool = load_pool(manifest_path, name="projected")
    return ProjectedPool(
        members=tuple(pool.matrices),
        stimulus_ids=pool.stimulus_ids,
        model_ids=tuple(pool.model_ids),
    )


# ---------------------------------------------------------------------------
# Bundles de alineamiento

def save_bundle(model: AlignmentModel, directory: PathLike) -> Path:
    """Guardar un AlignmentModel como directorio (baricentro, transformaciones, metadatos)"""
    target = Path(directory)
    with atomic_directory(target) as staging:
        save_matrix(staging / "barycenter.barymat", model.barycenter)
        for model_id, matrix in model.transforms.items():
            save_matrix(staging / "transforms" / f"{model_id}.barymat", matrix)
        if model.offsets is not None:
            for model_id, vector in model.offsets.items():
                save_matrix(staging / "offsets" / f"{model_id}.barymat", vector.reshape(1, -1))

        metadata = {
            "format": BUNDLE_FORMAT,
            "version": MANIFEST_VERSION,
            "model_order": model.model_ids,
            "original_widths": dict(model.original_widths),
            "training": model.training_meta.to_dict(),
            "generator": GENERATOR_NAME,
            "matrix_format": FORMAT_VERSIONS["matrix"],
        }
        if model.trace is not None:
            metadata["trace"] = model.trace.to_dict()
        _atomic_write_text(staging / "metadata.json", _dump_json(metadata))
    logger.info(f"Bundle de alineamiento guardado en {target}")
    return target


def load_bundle(directory: PathLike) -> AlignmentModel:
    """Cargar un AlignmentModel guardado con save_bundle"""
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingFile(f"Bundle no encontrado: {directory}")
    metadata = _load_json(directory / "metadata.json")
    if metadata.get("format") != BUNDLE_FORMAT:
        raise ManifestParse(f"{directory}: no es un bundle de alineamiento")
    if metadata.get("version") != MANIFEST_VERSION:
        raise VersionUnsupported(f"{directory}: versión de bundle {metadata.get('version')}")

    try:
        order = [str(i) for i in metadata["model_order"]]
        widths = {i: int(metadata["original_widths"][i]) for i in order}
        meta = TrainingMeta.from_dict(metadata["training"])
    except (KeyError, TypeError, ValueError) as e:
        raise ManifestParse(f"{directory}: metadatos incompletos ({e})") from e

    transforms = {i: load_matrix(directory / "transforms" / f"{i}.barymat") for i in order}
    offsets = None
    if meta.centered:
        offsets = {i: load_matrix(directory / "offsets" / f"{i}.barymat").reshape(-1) for i in order}
    trace = TrainTrace.from_dict(metadata["trace"]) if "trace" in metadata else None

    return AlignmentModel(
        barycenter=load_matrix(directory / "barycenter.barymat"),
        transforms=transforms,
        original_widths=widths,
        training_meta=meta,
        offsets=offsets,
        trace=trace,
    )


# ---------------------------------------------------------------------------
# Ground truth sintético

def save_ground_truth(truth: SyntheticGroundTruth, spec: SynthSpec, directory: PathLike) -> Path:
    """Guardar latentes, rotaciones y parámetros de generación de un pool sintético"""
    directory = Path(directory)
    save_matrix(directory / "train_latent.barymat", truth.train_latent)
    save_matrix(directory / "test_latent.barymat", truth.test_latent)
    rotations = {}
    for model_id, rotation in truth.rotations.items():
        relative = f"rotations/{model_id}.barymat"
        save_matrix(directory / relative, rotation)
        rotations[model_id] = relative

    manifest = {
        "format": GROUND_TRUTH_FORMAT,
        "version": MANIFEST_VERSION,
        "spec": spec.to_dict(),
        "train_latent": "train_latent.barymat",
        "test_latent": "test_latent.barymat",
        "rotations": rotations,
    }
    path = directory / "ground_truth.json"
    _atomic_write_text(path, _dump_json(manifest))
    return path


def load_ground_truth(manifest_path: PathLike) -> SyntheticGroundTruth:
    """Inverso de save_ground_truth"""
    manifest_path = Path(manifest_path)
    manifest = _load_json(manifest_path)
    base = manifest_path.parent
    try:
        return SyntheticGroundTruth(
            train_latent=load_matrix(_resolve(base, manifest["train_latent"])),
            test_latent=load_matrix(_resolve(base, manifest["test_latent"])),
            rotations={
                str(i): load_matrix(_resolve(base, p)) for i, p in manifest["rotations"].items()
            },
        )
    except (KeyError, AttributeError) as e:
        raise ManifestParse(f"{manifest_path}: manifiesto de ground truth incompleto ({e})") from e


# ---------------------------------------------------------------------------
# Reportes

def _parse_table(path: PathLike, fmt: str, header: List[str], delimiter: str) -> Tuple[Dict[str, str], List[List[str]]]:
    lines = _read_text(path).splitlines()
    meta: Dict[str, str] = {}
    rows: List[List[str]] = []
    header_seen = False

    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        # tras la cabecera un '#' inicial pertenece al stimulus_id
        if line.startswith("#") and not header_seen:
            if ":" in line:
                key, value = line[1:].split(":", 1)
                meta[key.strip()] = value.strip()
            elif line[1:].strip().startswith(fmt):
                meta["__format__"] = line[1:].strip()
            continue
        fields = line.split(delimiter)
        if not header_seen:
            if fields != header:
                raise ParseFailure(f"{path}:{number}: cabecera inesperada {fields}")
            header_seen = True
            continue
        if len(fields) != len(header):
            raise ParseFailure(f"{path}:{number}: {len(fields)} columnas, esperado {len(header)}")
        rows.append(fields)

    if not meta.get("__format__", "").startswith(fmt):
        raise ParseFailure(f"{path}: no es un reporte {fmt}")
    if not header_seen:
        raise ParseFailure(f"{path}: falta la cabecera")
    if not rows:
        raise ParseFailure(f"{path}: reporte vacío")
    return meta, rows


def _parse_float(value: str, path: PathLike) -> float:
    try:
        return float(value)
    except ValueError as e:
        raise ParseFailure(f"{path}: valor numérico inválido {value!r}") from e


CONSISTENCY_HEADER = ["stimulus_id", "score"]
EVAL_HEADER = ["model_id", "metric", "k", "value"]


def format_consistency_report(report: ConsistencyReport, delimiter: str = "\t") -> str:
    """Tabla de dos columnas (stimulus_id, score) en orden de estímulos"""
    lines = [
        f"# {CONSISTENCY_FORMAT} v{REPORT_VERSION}",
        f"# similarity: {report.similarity_kind}",
        f"# models: {','.join(report.pool_model_ids)}",
        f"# zero_norm_rows: {report.zero_norm_rows}",
        delimiter.join(CONSISTENCY_HEADER),
    ]
    lines += [f"{s}{delimiter}{_format_float(v)}" for s, v in zip(report.stimulus_ids, report.scores)]
    return "\n".join(lines) + "\n"


def save_consistency_report(report: ConsistencyReport, path: PathLike, delimiter: str = "\t") -> None:
    _atomic_write_text(path, format_consistency_report(report, delimiter))


def load_consistency_report(path: PathLike, delimiter: str = "\t") -> ConsistencyReport:
    meta, rows = _parse_table(path, CONSISTENCY_FORMAT, CONSISTENCY_HEADER, delimiter)
    models = tuple(m for m in meta.get("models", "").split(",") if m)
    try:
        zero_rows = int(meta.get("zero_norm_rows", "0"))
    except ValueError as e:
        raise ParseFailure(f"{path}: zero_norm_rows inválido") from e
    try:
        return ConsistencyReport(
            stimulus_ids=tuple(r[0] for r in rows),
            scores=tuple(_parse_float(r[1], path) for r in rows),
            pool_model_ids=models,
            similarity_kind=meta.get("similarity", "cosine"),
            zero_norm_rows=zero_rows,
        )
    except ValidationError as e:
        raise ParseFailure(f"{path}: {e}") from e


def format_eval_report(report: EvalReport, delimiter: str = "\t") -> str:
    """Tabla plana (model_id, metric, k, value); las filas de azar usan model_id '*'"""
    lines = [
        f"# {EVAL_FORMAT} v{REPORT_VERSION}",
        f"# n_stimuli: {report.n_stimuli}",
        f"# ks: {','.join(str(k) for k in report.ks)}",
        f"# skipped_constant_dimensions: {report.skipped_constant_dimensions}",
        delimiter.join(EVAL_HEADER),
    ]

    def row(model_id: str, metric: str, k: str, value: float) -> str:
        return delimiter.join([model_id, metric, k, _format_float(value)])

    for model_id in report.model_ids:
        lines.append(row(model_id, "correlation", "", report.per_model_correlation[model_id]))
        lines.append(row(model_id, "rms", "", report.per_model_rms[model_id]))
        for k in report.ks:
            lines.append(row(model_id, "retrieval", str(k), report.per_model_retrieval[model_id][k]))
    for k in report.ks:
        lines.append(row("*", "chance", str(k), report.chance_levels[k]))
    if report.cross_group_retrieval:
        for direction, values in report.cross_group_retrieval.items():
            for k in report.ks:
                lines.append(row("*", f"cross_{direction}", str(k), values[k]))
    return "\n".join(lines) + "\n"


def save_eval_report(report: EvalReport, path: PathLike, delimiter: str = "\t") -> None:
    _atomic_write_text(path, format_eval_report(report, delimiter))


def load_eval_report(path: PathLike, delimiter: str = "\t") -> EvalReport:
    meta, rows = _parse_table(path, EVAL_FORMAT, EVAL_HEADER, delimiter)
    try:
        ks = tuple(int(k) for k in meta["ks"].split(","))
        n_stimuli = int(meta.get("n_stimuli", "0"))
        skipped = int(meta.get("skipped_constant_dimensions", "0"))
    except (KeyError, ValueError) as e:
        raise ParseFailure(f"{path}: metadatos inválidos ({e})") from e

    correlation: Dict[str, float] = {}
    rms: Dict[str, float] = {}
    retrieval: Dict[str, Dict[int, float]] = {}
    chance: Dict[int, float] = {}
    cross: Dict[str, Dict[int, float]] = {}
    for model_id, metric, k, value in rows:
        number = _parse_float(value, path)
        try:
            if metric == "correlation":
                correlation[model_id] = number
            elif metric == "rms":
                rms[model_id] = number
            elif metric == "retrieval":
                retrieval.setdefault(model_id, {})[int(k)] = number
            elif metric == "chance":
                chance[int(k)] = number
            elif metric.startswith("cross_"):
                cross.setdefault(metric[len("cross_"):], {})[int(k)] = number
            else:
                raise ParseFailure(f"{path}: métrica desconocida {metric!r}")
        except ValueError as e:
            raise ParseFailure(f"{path}: K inválido {k!r}") from e

    if not correlation or set(correlation) != set(rms) or set(correlation) != set(retrieval):
        raise ParseFailure(f"{path}: métricas incompletas por modelo")
    return EvalReport(
        per_model_correlation=correlation,
        per_model_rms=rms,
        per_model_retrieval=retrieval,
        ks=ks,
        chance_levels=chance,
        skipped_constant_dimensions=skipped,
        n_stimuli=n_stimuli,
        cross_group_retrieval=cross or None,
    )
