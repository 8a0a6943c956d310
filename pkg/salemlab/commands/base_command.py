import logging
import time
from abc import ABC, abstractmethod
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Type

from pydantic import ValidationError

from ..core.config import settings
from ..core.exceptions import ConfigError, SalemLabError
from ..schemas.run_schemas import CommandResult, CommandTask, RunConfig
from ..services.storage import provenance


class CommandState(Enum):
    """Enum for command states."""

    IDLE = "idle"
    RUNNING = "running"
    ERROR = "error"


class BaseCommand(ABC):
    """Base class for all salemlab subcommands."""

    name: str = ""
    config_model: Type[RunConfig] = RunConfig

    def __init__(self, out_dir: Optional[str] = None):
        self.default_out_dir = out_dir
        self.state = CommandState.IDLE

        # Set up logging
        self.logger = logging.getLogger(f"command.{self.__class__.__name__}")

        self.health_metrics: Dict[str, Any] = {
            "start_time": datetime.utcnow().isoformat(),
            "tasks_processed": 0,
            "errors": 0,
            "last_error": None,
            "last_success": None,
            "last_duration": None,  # in seconds
        }

    def parse_config(self, data: Dict[str, Any]) -> RunConfig:
        """Validate a raw configuration mapping against the command's schema."""
        try:
            return self.config_model.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"invalid {self.name} configuration: {e}") from e

    @abstractmethod
    def run(self, task: CommandTask, config: RunConfig) -> CommandResult:
        """
        Execute the command.

        Args:
            task: The routed task
            config: Validated configuration

        Returns:
            CommandResult: Written files and a JSON-ready summary
        """

    def handle(self, task: CommandTask) -> CommandResult:
        """
        Validate, run and record metrics; domain errors are logged and re-raised.

        Args:
            task: The task to handle

        Returns:
            CommandResult: The result of the run
        """
        self.state = CommandState.RUNNING
        started = time.perf_counter()
        try:
            config = self.parse_config(task.config)
            result = self.run(task, config)
            self._update_health_metrics(success=True)
            self.state = CommandState.IDLE
            return result
        except SalemLabError as e:
            self._update_health_metrics(success=False, error=str(e))
            self.state = CommandState.ERROR
            self.logger.error(f"{self.name} failed: {e}")
            raise
        finally:
            self.health_metrics["last_duration"] = time.perf_counter() - started

    def output_dir(self, config: RunConfig) -> Path:
        path = Path(config.out_dir or self.default_out_dir or settings.OUTPUT_DIR)
        path.mkdir(parents=True, exist_ok=True)
        return path

    def seed(self, config: RunConfig) -> int:
        if config.seed is not None:
            return config.seed
        return settings.DEFAULT_SEED if settings.DEFAULT_SEED is not None else 0

    def provenance(self, config: RunConfig) -> Dict[str, Any]:
        return provenance(config, self.seed(config))

    def _update_health_metrics(self, success: bool, error: Optional[str] = None):
        """Update command health metrics."""
        self.health_metrics["tasks_processed"] += 1
        if success:
            self.health_metrics["last_success"] = datetime.utcnow().isoformat()
        else:
            self.health_metrics["errors"] += 1
            self.health_metrics["last_error"] = error
            self.health_metrics["last_error_time"] = datetime.utcnow().isoformat()

    def get_health_status(self) -> Dict[str, Any]:
        """Get current health status of the command."""
        return {
            "command": self.name,
            "command_type": self.__class__.__name__,
            "state": self.state.value,
            "health_metrics": self.health_metrics,
        }
