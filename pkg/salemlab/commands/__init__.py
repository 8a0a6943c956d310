from typing import Optional

from .construct import ConstructCommand
from .coordinator import CommandCoordinator
from .dim import DimCommand
from .energy import EnergyCommand
from .export import ExportCommand
from .fourier_scan import FourierScanCommand
from .sumset import SumsetCommand
from .verify import VerifyCommand

COMMANDS = (
    ConstructCommand,
    FourierScanCommand,
    DimCommand,
    EnergyCommand,
    SumsetCommand,
    VerifyCommand,
    ExportCommand,
)


def build_coordinator(out_dir: Optional[str] = None) -> CommandCoordinator:
    """Coordinator with every subcommand registered."""
    coordinator = CommandCoordinator()
    for command_cls in COMMANDS:
        coordinator.register_command(command_cls(out_dir=out_dir))
    return coordinator
