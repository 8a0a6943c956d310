import logging
from typing import Dict, List, Optional

from ..core.exceptions import ConfigError
from ..schemas.run_schemas import CommandResult, CommandTask
from .base_command import BaseCommand


class CommandCoordinator:
    """Routes subcommand tasks to their registered command."""

    def __init__(self):
        self.commands: Dict[str, BaseCommand] = {}
        self.logger = logging.getLogger("command.coordinator")

    def register_command(self, command: BaseCommand):
        """Register a command under its name."""
        self.commands[command.name] = command
        self.logger.debug(f"Registered command {command.name} ({command.__class__.__name__})")

    def unregister_command(self, name: str):
        if name in self.commands:
            del self.commands[name]
            self.logger.debug(f"Unregistered command {name}")

    @property
    def names(self) -> List[str]:
        return sorted(self.commands)

    def route_task(self, task: CommandTask) -> CommandResult:
        """
        Route a task to its command and run it.

        Args:
            task: The task to route

        Returns:
            CommandResult: The command's result
        """
        command = self._find_command(task)
        if not command:
            raise ConfigError(f"No command registered for {task.command!r}")
        self.logger.info(f"Running {task.command} (task {task.task_id})")
        return command.handle(task)

    def _find_command(self, task: CommandTask) -> Optional[BaseCommand]:
        return self.commands.get(task.command)

    def get_health_status(self) -> Dict[str, Dict]:
        return {name: cmd.get_health_status() for name, cmd in self.commands.items()}
