import hashlib
import io
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, TypeVar

import pandas as pd
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from ....domain.decision.entities.decision import ModelVariant
from ....domain.pipeline.entities.dataset import Dataset
from ....domain.pipeline.entities.metrics_report import MetricsReport, PointDecision
from ....domain.pipeline.entities.preprocess_plan import PreprocessPlan
from ....domain.pipeline.entities.training import EpochRecord, TrainedModel
from ....domain.shared.errors import IntegrityError, NumericError, ValidationError
from ....domain.shared.repositories.run_repository import RunRepository
from ..mappers.artifact_mapper import ArtifactMapper
from ..models.artifact_dto import (
    CheckRowDTO,
    DatasetDTO,
    DecisionRowDTO,
    HistoryRowDTO,
    PreprocessPlanDTO,
    SummaryRowDTO,
    TheoryRowDTO,
    TrainedModelDTO,
)

logger = logging.getLogger(__name__)

MANIFEST = "run_manifest.json"
DTO = TypeVar("DTO", bound=BaseModel)


def _sha256(content: bytes) -> str:
    return hashlib.sha256(content).hexdigest()


def _canonical(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), allow_nan=False, ensure_ascii=False)


def _dump_json(data: Dict[str, Any]) -> bytes:
    try:
        text = json.dumps(data, sort_keys=True, indent=2, allow_nan=False, ensure_ascii=False)
    except ValueError as e:
        raise NumericError(f"Refusing to write a non-finite value: {e}") from e
    return (text + "\n").encode("utf-8")


def _columns(dto: Type[BaseModel], by_alias: bool = False) -> List[str]:
    return [
        (field.alias if by_alias and field.alias else name)
        for name, field in dto.model_fields.items()
    ]


class FileRunRepository(RunRepository):
    """
    File-based implementation of RunRepository.

    One directory per run, JSON (UTF-8, sorted keys) and CSV ('.' decimal
    separator, header row) artifacts. Model files embed the SHA-256 of
    their canonical JSON without the checksum field.
    """

    def __init__(self, storage_path: str):
        self.storage_path = Path(storage_path)
        self.storage_path.mkdir(parents=True, exist_ok=True)

    @property
    def location(self) -> str:
        return str(self.storage_path)

    # ------------------------------------------------------------- low level

    def _write(self, name: str, content: bytes) -> str:
        """Append-only write; returns the SHA-256 of ``content``."""
        path = self.storage_path / name
        digest = _sha256(content)
        if path.exists():
            if _sha256(path.read_bytes()) == digest:
                logger.debug(f"Artifact {name} unchanged")
                return digest
            raise IntegrityError(f"Artifact {path} already exists with different content")
        tmp = path.with_name(f".{name}.tmp")
        tmp.write_bytes(content)
        os.replace(tmp, path)
        logger.info(f"Artifact written: {path}")
        return digest

    def _validate(self, dto: Type[DTO], row: Dict[str, Any]) -> DTO:
        try:
            return dto.model_validate(row)
        except PydanticValidationError as e:
            raise NumericError(f"Row rejected by {dto.__name__}: {e}") from e

    def _write_rows(self, name: str, rows: Sequence[Dict[str, Any]], dto: Type[BaseModel], columns: Sequence[str], by_alias: bool = False) -> str:
        checked = [self._validate(dto, row).model_dump(by_alias=by_alias) for row in rows]
        frame = pd.DataFrame(checked, columns=list(columns))
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator="\n")
        return self._write(name, buffer.getvalue().encode("utf-8"))

    def _read_json(self, name: str) -> Optional[Dict[str, Any]]:
        path = self.storage_path / name
        if not path.exists():
            return None
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise IntegrityError(f"Artifact {path} is not valid JSON: {e}") from e

    def _parse(self, dto: Type[DTO], data: Dict[str, Any], name: str) -> DTO:
        try:
            return dto.model_validate(data)
        except PydanticValidationError as e:
            raise IntegrityError(f"Artifact {name} does not match {dto.__name__}: {e}") from e

    # ----------------------------------------------------------------- prep

    def save_prepared(self, train: Dataset, test: Dataset, plan: PreprocessPlan) -> None:
        try:
            documents = {
                "train.json": ArtifactMapper.dataset_to_dto(train),
                "test.json": ArtifactMapper.dataset_to_dto(test),
                "preprocess_plan.json": ArtifactMapper.plan_to_dto(plan),
            }
        except PydanticValidationError as e:
            raise NumericError(f"Preprocessed data is not finite: {e}") from e
        for name, dto in documents.items():
            self._write(name, _dump_json(dto.model_dump()))

    def load_prepared(self) -> Optional[Tuple[Dataset, Dataset, PreprocessPlan]]:
        raw = [self._read_json(name) for name in ("train.json", "test.json", "preprocess_plan.json")]
        if any(doc is None for doc in raw):
            return None
        train = ArtifactMapper.dataset_to_domain(self._parse(DatasetDTO, raw[0], "train.json"))
        test = ArtifactMapper.dataset_to_domain(self._parse(DatasetDTO, raw[1], "test.json"))
        plan = ArtifactMapper.plan_to_domain(self._parse(PreprocessPlanDTO, raw[2], "preprocess_plan.json"))
        logger.debug(f"Loaded prepared data from {self.storage_path}: {len(train)} train / {len(test)} test")
        return train, test, plan

    # ---------------------------------------------------------------- models

    def save_model(self, model: TrainedModel, history: Sequence[EpochRecord]) -> str:
        try:
            data = ArtifactMapper.model_to_dto(model).model_dump()
            data["checksum"] = hashlib.sha256(_canonical(data).encode("utf-8")).hexdigest()
        except (PydanticValidationError, ValueError) as e:
            raise NumericError(f"Model {model.variant.value} is not finite: {e}") from e

        name = f"model_{model.stem}.json"
        self._write(name, _dump_json(data))
        self._write_rows(
            f"history_{model.stem}.csv",
            [ArtifactMapper.history_row(r) for r in history],
            HistoryRowDTO,
            _columns(HistoryRowDTO),
        )
        return name

    def _load_model_file(self, path: Path) -> TrainedModel:
        data = self._read_json(path.name)
        if not isinstance(data, dict) or "checksum" not in data:
            raise IntegrityError(f"Model file {path} has no checksum")
        stored = data.pop("checksum")
        try:
            actual = hashlib.sha256(_canonical(data).encode("utf-8")).hexdigest()
        except ValueError as e:
            raise IntegrityError(f"Model file {path} holds non-finite values") from e
        if actual != stored:
            raise IntegrityError(f"Checksum mismatch for {path}: stored {stored[:12]}, computed {actual[:12]}")
        try:
            return ArtifactMapper.model_to_domain(self._parse(TrainedModelDTO, data, path.name))
        except ValidationError as e:
            raise IntegrityError(f"Model file {path} is inconsistent: {e}") from e

    def load_model(self, variant: ModelVariant) -> Optional[TrainedModel]:
        paths = [self.storage_path / f"model_{variant.value}.json"]
        paths += sorted(self.storage_path.glob(f"model_{variant.value}_epoch*.json"))
        models = [self._load_model_file(p) for p in paths if p.exists()]
        if not models:
            return None
        return max(models, key=lambda m: m.epochs)

    # ------------------------------------------------------------ evaluation

    def save_evaluation(self, report: MetricsReport, decisions: Sequence[PointDecision]) -> None:
        try:
            dto = ArtifactMapper.report_to_dto(report)
        except PydanticValidationError as e:
            raise NumericError(f"Report {report.cell_name} is not finite: {e}") from e
        self._write(f"report_{report.cell_name}.json", _dump_json(dto.model_dump()))
        self._write_rows(
            f"decisions_{report.cell_name}.csv",
            [ArtifactMapper.decision_row(d) for d in decisions],
            DecisionRowDTO,
            _columns(DecisionRowDTO),
        )

    def save_summary(self, reports: Sequence[MetricsReport]) -> None:
        self._write_rows(
            "summary.csv",
            [ArtifactMapper.summary_row(r) for r in reports],
            SummaryRowDTO,
            _columns(SummaryRowDTO, by_alias=True),
            by_alias=True,
        )

    # ---------------------------------------------------------------- theory

    def save_theory_table(self, name: str, rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> None:
        self._write_rows(name, rows, TheoryRowDTO, columns)

    def save_check_table(self, name: str, rows: Sequence[Dict[str, Any]]) -> None:
        self._write_rows(name, rows, CheckRowDTO, _columns(CheckRowDTO))

    def load_table(self, name: str) -> Optional[List[Dict[str, Any]]]:
        path = self.storage_path / name
        if not path.exists():
            return None
        return pd.read_csv(path).to_dict(orient="records")

    # -------------------------------------------------------------- manifest

    def inventory(self) -> Dict[str, str]:
        return {
            path.name: _sha256(path.read_bytes())
            for path in sorted(self.storage_path.iterdir())
            if path.is_file() and path.name != MANIFEST and not path.name.startswith(".")
        }

    def save_manifest(self, data: Dict[str, Any]) -> None:
        manifest = dict(data)
        manifest["files"] = self.inventory()
        path = self.storage_path / MANIFEST
        path.write_bytes(_dump_json(manifest))
        logger.info(f"Manifest written: {path} ({len(manifest['files'])} files)")

    def load_manifest(self) -> Optional[Dict[str, Any]]:
        return self._read_json(MANIFEST)
