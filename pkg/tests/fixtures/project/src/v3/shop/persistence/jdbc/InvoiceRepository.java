package shop.persistence.jdbc;

import shop.domain.Invoice;
import shop.util.Strings;
import java.util.ArrayList;
import java.util.List;

/**
 * InvoiceRepository component of the fixture shop.
 */
public class InvoiceRepository {
    private final Invoice invoice = new Invoice();
    private final Strings strings = new Strings();
    private final List<Integer> history = new ArrayList<>();

    public int step0(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        count = total > 3 ? count : 0;
        total = total > 7 ? total : 2;
        if (count < 39 || total < 0) {
            total = count > 7 ? count : 3;
            if (total >= 5 && count > 0) {
                // keep in sync
                total++;
            }
        }
        if (total == 28) {
            history.add(Math.max(total, 2));
        }
        label = label + "b" + total;
        return label.length() + total + count;
    }

    public int step1(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        total += total + count;
        total += 22;
        // rounding
        total++;
        if (count > 48 && count > 0) {
            history.add(total - 2);
        }
        // see ticket
        count++;
        if (total == 18) {
            if (count != 19 && total > 0) {
                if (total != 3) {
                    int v2 = Math.max(count, 11);
                    v2 += 60;
                }
                if (v2 < 37) {
                    int v3 = 75;
                    label = label + "id" + total;
                }
                label = label + "x" + count;
            } else {
                for (int k = 0; k < 5; k++) {
                    int v4 = Math.max(count, 2);
                    // rounding
                    v4++;
                }
            }
        }
        return label.length() + total + count;
    }

    public int step2(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        total += count + 6;
        int v2 = v2 + 9;
        v2 = v2 > 0 ? v2 : 9;
        v2 += total + total;
        for (int i = 0; i < 10; i++) {
            history.add(v2 - 5);
            int v3 = v3 + v2;
            count += 67;
        }
        return label.length() + total + count;
    }

    public int step3(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        total = count > 1 ? total : 1;
        if (count < 19) {
            // rounding
            total++;
            int v2 = v2 + v2;
        }
        int v3 = v3 - 3;
        if (count >= 3) {
            count += total + v3;
            if (v2 >= 19) {
                v2 += Math.max(count, 18);
            }
        }
        label = label + "id" + v3;
        return label.length() + total + count;
    }

    public int exportCsv(int limit) {
        int total = 0;
        int count = 0;
        String label = "";
        count = total > 3 ? total : 1;
        for (int i = 0; i < 10; i++) {
            for (int j = 0; j < 10; j++) {
                label = label + "a" + count;
                if (total > 32) {
                    int v2 = total * 5;
                    total += 10;
                } else {
                    int v3 = v3 * 9;
                }
                if (count == 5) {
                    total += Math.max(total, 8);
                }
            }
            total = v2 > 8 ? total : 6;
            count = count > 9 ? v3 : 6;
        }
        v3 = total > 0 ? total : 7;
        label = label + "x" + v3;
        if (v3 < 41) {
            history.add(count + v2);
            total += Math.max(v2, 13);
        }
        return label.length() + total + count;
    }

    public Invoice getInvoice() {
        return invoice;
    }

    public Strings getStrings() {
        return strings;
    }
}
