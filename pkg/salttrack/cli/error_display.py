import textwrap
from typing import IO, Optional, Sequence

from termcolor import colored

from ..errors import SaltTrackError, FormatError
from ..tracking import SectionResult


class ErrorsOutput:
    def __init__(self, stream: IO, use_color: bool = False):
        self.stream = stream
        self.max_width = 80
        self.use_color = use_color
        self.text_indent = 4

    def _echo(self, text: str, color: str = None, nl: bool = False) -> None:
        if self.use_color and color is not None:
            self.stream.write(colored(text, color))
        else:
            self.stream.write(text)
        if nl:
            self.stream.write("\n")

    def _write_wrapped(self, message: str) -> None:
        prefix = " " * self.text_indent
        for line in textwrap.wrap(message, self.max_width - self.text_indent):
            self._echo(prefix + line, nl=True)

    def write_error(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        header = ["[error"]
        if path is not None or line is not None:
            header.append(" in")
            if path is not None:
                header.append(" ")
                header.append(path)
            if line is not None:
                header.append(" line ")
                header.append(str(line))
        header.append("]")

        self._echo("".join(header), "red", nl=True)
        self._write_wrapped(message)
        self._echo("", nl=True)

    def write_exception(self, error: SaltTrackError):
        if isinstance(error, FormatError):
            self.write_error(str(error), error.path, error.line)
        else:
            self.write_error(str(error))

    def write_usage_error(self, message: str):
        self._echo("[usage error]", "red", nl=True)
        self._write_wrapped(message)
        self._echo("", nl=True)

    def write_section_failures(self, results: Sequence[SectionResult]):
        failed = [result for result in results if not result.succeeded]
        if not failed:
            return
        self._echo(f"[{len(failed)} of {len(results)} sections failed]", "red", nl=True)
        width = max(len(str(result.inline_no)) for result in failed)
        for result in failed:
            self._echo(" " * self.text_indent)
            self._echo(f"inline {result.inline_no:>{width}}", "yellow")
            self._echo(f"  {result.error}", nl=True)
        self._echo("", nl=True)
