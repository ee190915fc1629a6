/**
 * Stale-response discipline for overlapping refetches.
 *
 * Every refetch takes a ticket; a response may only be applied when its
 * ticket is still the newest one issued. Rapid parameter changes therefore
 * never paint a ranking from an older request, no matter the completion
 * order.
 */
export class SequenceGate {
  private latest = 0;

  /** Issue the next request ticket. */
  next(): number {
    return ++this.latest;
  }

  /** True when `ticket` is still the most recently issued one. */
  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }

  get current(): number {
    return this.latest;
  }
}
